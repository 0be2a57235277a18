#include <doctest.h>

#include <cstdint>

#include "invlab/modular.hpp"
#include "invlab/rng.hpp"

using namespace invlab;

TEST_CASE("is_prime on small and oracle-checked values") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(3));
    CHECK(is_prime(10007));  // verified by trial division below
    CHECK_FALSE(is_prime(10005));
    CHECK_FALSE(is_prime(1ull << 40));
    CHECK(is_prime(2147483647));         // 2^31 - 1
    CHECK_FALSE(is_prime(3215031751));   // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("is_prime agrees with trial division up to 20000") {
    auto trial = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = 0; n <= 20000; ++n)
        CHECK(is_prime(n) == trial(n));
}

TEST_CASE("mod_inverse examples") {
    PrimeModulus p7(7);
    CHECK(p7.inverse(3) == 5);
    CHECK(p7.inverse(1) == 1);
    PrimeModulus p11(11);
    CHECK(p11.inverse(10) == 10);
    CHECK_THROWS_AS(p7.inverse(0), std::domain_error);
    CHECK_THROWS_AS(p7.inverse(14), std::domain_error);
}

TEST_CASE("inverse is an involution and table-free path agrees") {
    for (std::uint64_t p : {3ull, 101ull, 1009ull, 10007ull}) {
        PrimeModulus pm(p);
        SplitMix64 rng(42);
        for (int i = 0; i < 200; ++i) {
            std::uint64_t n = 1 + rng.below(p - 1);
            std::uint64_t inv = pm.inverse(n);
            CHECK(inv >= 1);
            CHECK(inv <= p - 1);
            CHECK(static_cast<unsigned __int128>(n) * inv % p == 1);
            CHECK(pm.inverse(inv) == n);
            CHECK(mod_inverse_euclid(n, p) == inv);
        }
    }
}

TEST_CASE("full table agreement at p = 10007") {
    PrimeModulus pm(10007);
    for (std::uint64_t n = 1; n < 10007; ++n)
        CHECK(pm.inverse(n) == mod_inverse_euclid(n, 10007));
}

TEST_CASE("balanced residues") {
    PrimeModulus p7(7);
    CHECK(p7.balanced(6) == -1);
    CHECK(p7.balanced(3) == 3);
    CHECK(p7.balanced(0) == 0);
    CHECK(p7.balanced(-8) == -1);
    for (std::int64_t k = -50; k <= 50; ++k) {
        auto r = p7.balanced(k);
        CHECK(std::abs(r) <= 3);
        CHECK((k - r) % 7 == 0);
    }
}

TEST_CASE("dist_nearest_int") {
    CHECK(dist_nearest_int(0.3) == doctest::Approx(0.3));
    CHECK(dist_nearest_int(0.75) == doctest::Approx(0.25));
    CHECK(dist_nearest_int(2.0) == doctest::Approx(0.0));
    SplitMix64 rng(7);
    for (int i = 0; i < 300; ++i) {
        double z = (static_cast<double>(rng.below(1u << 20)) / (1u << 20) - 0.5) * 100;
        double d = dist_nearest_int(z);
        CHECK(d >= 0.0);
        CHECK(d <= 0.5);
        CHECK(dist_nearest_int(-z) == doctest::Approx(d).epsilon(1e-12));
        CHECK(dist_nearest_int(z + 1.0) == doctest::Approx(d).epsilon(1e-9));
    }
}

TEST_CASE("root table is unit circle and multiplicative") {
    PrimeModulus pm(101);
    for (std::uint64_t a = 0; a < 101; ++a) {
        CHECK(std::abs(std::abs(pm.root(a)) - 1.0) < 1e-12);
        for (std::uint64_t b : {1ull, 7ull, 55ull, 100ull})
            CHECK(std::abs(pm.root(a) * pm.root(b) - pm.root((a + b) % 101)) < 1e-12);
    }
}

TEST_CASE("construction rejects non-primes and p = 2") {
    CHECK_THROWS_AS(PrimeModulus(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(100), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(1), std::invalid_argument);
}

TEST_CASE("above the table cap, on-demand paths still work") {
    PrimeModulus pm(10007, /*table_cap=*/100);
    CHECK_FALSE(pm.has_tables());
    CHECK(pm.inverse(3) == mod_inverse_euclid(3, 10007));
    CHECK(std::abs(pm.root(5) - PrimeModulus(10007).root(5)) < 1e-12);
}
