#include <doctest.h>

#include <cmath>
#include <complex>

#include "invlab/kloosterman.hpp"
#include "invlab/rng.hpp"

using namespace invlab;

TEST_CASE("complete sum examples") {
    PrimeModulus p5(5);
    CHECK(kloosterman(0, 0, p5).value.real() == doctest::Approx(4.0));
    PrimeModulus p7(7);
    CHECK(kloosterman(1, 0, p7).value.real() == doctest::Approx(-1.0));
    // (3 - sqrt(5))/2, from direct summation over c = 1..4
    CHECK(kloosterman(1, 1, p5).value.real() ==
          doctest::Approx(0.38196601125010515).epsilon(1e-12));
}

TEST_CASE("reality and symmetry") {
    for (std::uint64_t p : {5ull, 31ull, 101ull}) {
        PrimeModulus pm(p);
        for (std::uint64_t a = 0; a < p; a += 3)
            for (std::uint64_t b = 0; b < p; b += 5) {
                auto v = kloosterman(a, b, pm).value;
                CHECK(std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v)));
                CHECK(std::abs(v - kloosterman(b, a, pm).value) < 1e-9);
            }
    }
}

TEST_CASE("multiplicative reduction, exhaustive p = 31") {
    PrimeModulus pm(31);
    for (std::uint64_t a = 1; a < 31; ++a)
        for (std::uint64_t b = 0; b < 31; ++b)
            CHECK(std::abs(kloosterman(a, b, pm).value -
                           kloosterman(1, a * b % 31, pm).value) < 1e-9);
}

TEST_CASE("weil margin") {
    PrimeModulus p5(5);
    CHECK(weil_margin(1, 1, p5) == doctest::Approx(0.08541019662496846).epsilon(1e-10));
    CHECK_THROWS_AS(weil_margin(1, 0, p5), std::domain_error);
    PrimeModulus pm(101);
    double max_margin = 0.0;
    for (std::uint64_t a = 0; a < 101; ++a)
        for (std::uint64_t b = 1; b < 101; ++b)
            max_margin = std::max(max_margin, weil_margin(a, b, pm));
    CHECK(max_margin <= 1.0);
}

TEST_CASE("row: slow path properties and fast path agreement") {
    PrimeModulus pm(101);
    auto row = kloosterman_row(1, pm, /*fast=*/false);
    CHECK(row[0] == doctest::Approx(-1.0));
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));

    auto fast = kloosterman_row(1, pm, /*fast=*/true);
    double max_diff = 0.0;
    for (std::size_t b = 0; b < 101; ++b)
        max_diff = std::max(max_diff, std::abs(row[b] - fast[b]));
    CHECK(max_diff < 1e-9);

    auto row7 = kloosterman_row(7, pm, false);
    auto fast7 = kloosterman_row(7, pm, true);
    for (std::size_t b = 0; b < 101; ++b)
        CHECK(row7[b] == doctest::Approx(fast7[b]).epsilon(1e-9));

    PrimeModulus small(10007, /*table_cap=*/100);
    CHECK_THROWS_AS(kloosterman_row(1, small), std::domain_error);
}

TEST_CASE("chirp base table matches naive base at p = 1009") {
    PrimeModulus pm(1009);
    auto naive = kloosterman_base(pm, false);
    auto chirp = kloosterman_base(pm, true);
    for (std::size_t t = 0; t < 1009; ++t)
        CHECK(std::abs(naive[t] - chirp[t]) < 1e-9);
}

TEST_CASE("incomplete sums") {
    PrimeModulus p5(5);
    // inverses mod 5: 1->1, 2->3, 3->2
    auto v = incomplete_kloosterman({1.0, 3.0}, 1, p5);
    CHECK(v.real() == doctest::Approx(-1.3090169943749474).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.9510565162951536).epsilon(1e-12));

    PrimeModulus pm(101);
    // complete Ramanujan-type sum
    auto full = incomplete_kloosterman({1.0, 100.0}, 3, pm);
    CHECK(std::abs(full - std::complex<double>(-1.0, 0.0)) < 1e-9);
    // l = 0 counts integers
    CHECK(incomplete_kloosterman({1.0, 3.0}, 0, pm).real() == doctest::Approx(3.0));

    CHECK_THROWS_AS(incomplete_kloosterman({0.0, 3.0}, 1, pm), std::domain_error);
    CHECK_THROWS_AS(incomplete_kloosterman({90.0, 101.0}, 1, pm), std::domain_error);
}

TEST_CASE("mean value check") {
    PrimeModulus pm(101);
    std::vector<Interval> one{{1.0, 100.0}};
    auto chk = mean_value_check(one, 99.0, 3, pm);
    CHECK(chk.lhs == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(chk.holds);

    // unit-length intervals, tiny log^2 H factor: compute, do not assume
    std::vector<Interval> units;
    for (int j = 0; j < 10; ++j)
        units.push_back({2.0 + 4.0 * j, 3.0 + 4.0 * j});
    auto chk2 = mean_value_check(units, 1.5, 1, pm);
    CHECK(chk2.lhs <= 40.0 + 1e-9);  // each interval holds 2 integers, |sum|² ≤ 4
    CHECK(chk2.holds == (chk2.lhs <= chk2.rhs));

    CHECK_THROWS_AS(mean_value_check(one, 99.0, 0, pm), std::domain_error);
    std::vector<Interval> overlap{{1.0, 20.0}, {10.0, 30.0}};
    CHECK_THROWS_AS(mean_value_check(overlap, 20.0, 1, pm), std::domain_error);
    std::vector<Interval> short_len{{1.0, 2.0}};
    CHECK_THROWS_AS(mean_value_check(short_len, 99.0, 1, pm), std::domain_error);
}

TEST_CASE("mean value holds on random disjoint families, p = 1009") {
    PrimeModulus pm(1009);
    SplitMix64 rng(123);
    const double H = 30.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Interval> intervals;
        double cursor = 1.0;
        for (int j = 0; j < 30; ++j) {
            double len = H / 2.0 + (H / 2.0) * static_cast<double>(rng.below(1000)) / 1000.0;
            double gap = 1.0 + static_cast<double>(rng.below(3));
            if (cursor + len >= 1008.0) break;
            intervals.push_back({cursor, cursor + len});
            cursor += len + gap;
        }
        auto chk = mean_value_check(intervals, H, 1, pm);
        CHECK(chk.holds);
    }
}
