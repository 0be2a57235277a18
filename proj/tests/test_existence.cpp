#include <doctest.h>

#include <cmath>

#include "invlab/existence.hpp"
#include "invlab/poisson.hpp"
#include "invlab/rng.hpp"

using namespace invlab;

TEST_CASE("solution_exists worked examples") {
    PrimeModulus pm(11);
    auto r1 = solution_exists({1.0, 1.0}, {1.0, 1.0}, pm);
    CHECK(r1.exists);
    CHECK(r1.witness == std::make_pair<std::int64_t, std::int64_t>(1, 1));

    auto r2 = solution_exists({2.0, 4.0}, {3.0, 5.0}, pm);
    CHECK(r2.exists);
    CHECK(r2.witness == std::make_pair<std::int64_t, std::int64_t>(4, 3));

    auto r3 = solution_exists({2.0, 3.0}, {2.0, 3.0}, pm);  // 2̄=6, 3̄=4
    CHECK_FALSE(r3.exists);

    CHECK_THROWS_AS(solution_exists({0.0, 3.0}, {1.0, 2.0}, pm), std::domain_error);
    CHECK_THROWS_AS(solution_exists({1.0, 3.0}, {9.0, 11.0}, pm), std::domain_error);
}

TEST_CASE("x_spacing") {
    IntervalFamily fam;
    fam.p = 11;
    fam.H = fam.K = 1.0;
    fam.centers = {{1, 5}, {4, 5}, {8, 5}};
    CHECK(x_spacing(fam) == doctest::Approx(3.0));  // wrapped distances 3, 4, 4

    fam.centers = {{4, 5}, {4, 6}};
    CHECK(x_spacing(fam) == doctest::Approx(0.0));

    fam.centers = {{4, 5}};
    CHECK(x_spacing(fam) == doctest::Approx(5.5));  // p/2 convention for J = 1
}

TEST_CASE("threshold formulas, frozen oracle values") {
    CHECK(thm1_threshold(101.0, 10.0, 10.0) ==
          doctest::Approx(46740.817842359075).epsilon(1e-12));
    // H = K = p collapses to (log p)^4 / p
    CHECK(thm1_threshold(101.0, 101.0, 101.0) ==
          doctest::Approx(std::pow(std::log(101.0), 4.0) / 101.0).epsilon(1e-12));
    // doubling H divides by 4
    CHECK(thm1_threshold(101.0, 20.0, 10.0) ==
          doctest::Approx(thm1_threshold(101.0, 10.0, 10.0) / 4.0).epsilon(1e-12));

    CHECK(thm3_threshold(1009.0, 100.0, 100.0, 50.0, 0.5) ==
          doctest::Approx(17879.40585776153).epsilon(1e-12));
    // X >= H reduces to Theorem 1's shape with log power 3 + eps
    CHECK(thm3_threshold(1009.0, 100.0, 100.0, 150.0, 0.5) ==
          doctest::Approx(std::pow(1009.0, 3.0) * std::pow(std::log(1009.0), 3.5) /
                          (100.0 * 100.0 * 100.0 * 100.0)).epsilon(1e-12));
    // X = 1 scales as 1/H, not 1/H^2
    CHECK(thm3_threshold(1009.0, 200.0, 100.0, 1.0, 0.5) ==
          doctest::Approx(thm3_threshold(1009.0, 100.0, 100.0, 1.0, 0.5) / 2.0)
              .epsilon(1e-12));

    auto t4 = thm4_thresholds(1009.0, 100.0, 100.0, 0.5);
    CHECK(t4.X_max == doctest::Approx(17.306314561851933).epsilon(1e-12));
    CHECK(t4.J_min == doctest::Approx(403.2612160488766).epsilon(1e-12));
    auto t4d = thm4_thresholds(1009.0, 200.0, 200.0, 0.5);
    CHECK(t4d.X_max == doctest::Approx(4.0 * t4.X_max).epsilon(1e-12));
    CHECK(t4d.J_min == doctest::Approx(t4.J_min / 4.0).epsilon(1e-12));
}

TEST_CASE("generate_family determinism and postconditions") {
    PrimeModulus pm(1009);
    auto a = generate_family(FamilyKind::general, pm, 10.0, 12.0, 8, {}, 42);
    auto b = generate_family(FamilyKind::general, pm, 10.0, 12.0, 8, {}, 42);
    CHECK(a.centers == b.centers);
    auto c = generate_family(FamilyKind::general, pm, 10.0, 12.0, 8, {}, 43);
    CHECK(a.centers != c.centers);

    auto disjoint = generate_family(FamilyKind::disjoint, pm, 10.0, 10.0, 50, {}, 7);
    disjoint.validate();
    for (std::size_t j = 0; j < 50; ++j)
        for (std::size_t k = j + 1; k < 50; ++k)
            CHECK_FALSE(disjoint.i1(j).overlaps(disjoint.i1(k)));

    SpacingParams sp{25.0, 0};
    auto spaced = generate_family(FamilyKind::x_spaced, pm, 10.0, 10.0, 20, sp, 9);
    CHECK(x_spacing(spaced) >= 25.0);

    SpacingParams ap{7.0, -3};
    auto arith = generate_family(FamilyKind::arithmetic, pm, 10.0, 10.0, 20, ap, 11);
    arith.validate();
    CHECK(arith.X == 7);
    CHECK(arith.Y == -3);

    // infeasible requests name the violated capacity
    CHECK_THROWS_AS(generate_family(FamilyKind::disjoint, pm, 100.0, 10.0, 50, {}, 1),
                    std::domain_error);
    CHECK_THROWS_AS(generate_family(FamilyKind::x_spaced, pm, 10.0, 10.0, 200,
                                    SpacingParams{50.0, 0}, 1),
                    std::domain_error);
}

TEST_CASE("oracle agrees with the weighted count") {
    for (std::uint64_t p : {101ull, 1009ull}) {
        PrimeModulus pm(p);
        SplitMix64 rng(p);
        for (int i = 0; i < 50; ++i) {
            double H = 10.0 + static_cast<double>(rng.below(30));
            auto sc_ok = H / std::log(static_cast<double>(p)) >= 1.0;
            if (!sc_ok) continue;
            auto fam = generate_family(FamilyKind::general, pm, H, H,
                                       1 + rng.below(8), {}, rng.next());
            auto sc = scales(H, H, pm, 0.5);
            bool weighted = t_direct(fam, sc, pm).T > 0.0;
            CHECK(weighted == family_solvable(fam, pm));
        }
    }
}

TEST_CASE("minimal_J_search on a trivially solvable configuration") {
    PrimeModulus pm(211);
    // maximal interval pair: every family of size 1 contains inverse pairs
    auto rep = minimal_J_search(FamilyKind::general, pm, 209.0, 209.0, {}, 0.5, 5, 1);
    CHECK_FALSE(rep.saturated);
    CHECK(rep.empirical_min_J == 1);
    CHECK(rep.c_emp > 0.0);
    CHECK(rep.c_emp == doctest::Approx(1.0 / rep.threshold_value));

    auto rep2 = minimal_J_search(FamilyKind::general, pm, 209.0, 209.0, {}, 0.5, 5, 1);
    CHECK(rep2.empirical_min_J == rep.empirical_min_J);  // deterministic in seed
}

TEST_CASE("bound_audit shapes and preconditions") {
    PrimeModulus pm(1009);
    auto sc = scales(150.0, 150.0, pm, 0.5);
    SpacingParams sp{160.0, 0};
    auto fam = generate_family(FamilyKind::x_spaced, pm, 150.0, 150.0, 5, sp, 3);
    auto ratios = bound_audit(fam, sc, pm);
    REQUIRE(ratios.size() == 1);
    CHECK(std::isfinite(ratios[0].ratio));
    CHECK(ratios[0].ratio < 100.0);

    // arithmetic family with X < x violates the audit precondition
    SpacingParams tight{2.0, 3};
    auto arith = generate_family(FamilyKind::arithmetic, pm, 150.0, 150.0, 5, tight, 3);
    CHECK_THROWS_AS(bound_audit(arith, sc, pm), std::domain_error);

    auto general = generate_family(FamilyKind::general, pm, 150.0, 150.0, 5, {}, 3);
    CHECK_THROWS_AS(bound_audit(general, sc, pm), std::domain_error);
}

TEST_CASE("thresholds are decreasing in H and K") {
    for (double H : {20.0, 40.0, 80.0}) {
        CHECK(thm1_threshold(1009.0, 2.0 * H, 50.0) < thm1_threshold(1009.0, H, 50.0));
        CHECK(thm1_threshold(1009.0, 50.0, 2.0 * H) < thm1_threshold(1009.0, 50.0, H));
        CHECK(thm3_threshold(1009.0, 50.0, 50.0, H / 2.0, 0.5) >=
              thm3_threshold(1009.0, 50.0, 50.0, H, 0.5));
    }
}
