#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invlab/family.hpp"
#include "invlab/gaussian.hpp"
#include "invlab/interval.hpp"
#include "invlab/modular.hpp"

namespace invlab {

struct ExistenceResult {
    bool exists = false;
    std::optional<std::pair<std::int64_t, std::int64_t>> witness;  // (x, y), xy ≡ 1
};

/// Brute-force oracle: does xy ≡ 1 (mod p) have a solution with
/// (x,y) ∈ (I1 × I2) ∩ ℤ²? Enumerates the shorter interval through the
/// inverse table. Requires I1, I2 ⊆ (0, p).
ExistenceResult solution_exists(const Interval& I1, const Interval& I2,
                                const PrimeModulus& pm);

/// min_{j≠k} p·||(M_j − M_k)/p||. Returns p/2 for J = 1 (the supremum of
/// attainable wrapped distances; documented convention).
double x_spacing(const IntervalFamily& fam);

/// p³ (log p)⁴ / (H²K²), implied constant 1.
double thm1_threshold(double p, double H, double K);

/// p³ (log p)^{3+ε} / (H K² min{H, X}).
double thm3_threshold(double p, double H, double K, double X, double epsilon);

struct Thm4Thresholds {
    double X_max = 0.0;  // HK / (p^{1/2} (log p)^{1+ε})
    double J_min = 0.0;  // p^{3/2} (log p)^{2+ε} / (HK)
};
Thm4Thresholds thm4_thresholds(double p, double H, double K, double epsilon);

/// Seeded family generator. Deterministic in seed (splitmix64 stream).
/// Throws std::domain_error naming the violated capacity constraint when
/// the request is infeasible.
IntervalFamily generate_family(FamilyKind kind, const PrimeModulus& pm, double H, double K,
                               std::size_t J, const SpacingParams& spacing,
                               std::uint64_t seed);

/// Largest J the generator can satisfy for these parameters.
std::size_t family_capacity(FamilyKind kind, const PrimeModulus& pm, double H, double K,
                            const SpacingParams& spacing);

/// Does some index j of the family admit a solution?
bool family_solvable(const IntervalFamily& fam, const PrimeModulus& pm);

struct AuditRatio {
    double actual = 0.0;     // |T − Jxy/p|
    double predicted = 0.0;  // proof-shaped error term
    double ratio = 0.0;
};

/// Error-shape audit against the proof's predicted error terms:
/// x_spaced: ((log 2J) J x p (1/x + 1/X))^{1/2};
/// arithmetic: X J / p^{1/2} + p^{1/2} log p (requires X ≥ x).
std::vector<AuditRatio> bound_audit(const IntervalFamily& fam, const GaussianScale& sc,
                                    const PrimeModulus& pm);

struct ExperimentReport {
    std::uint64_t p = 0;
    double H = 0.0;
    double K = 0.0;
    double epsilon = 0.5;
    FamilyKind kind = FamilyKind::general;
    SpacingParams spacing;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double threshold_value = 0.0;
    std::size_t empirical_min_J = 0;
    double c_emp = 0.0;
    bool saturated = false;  // no J up to the capacity succeeded
    std::vector<AuditRatio> audit_ratios;
    double runtime_s = 0.0;
};

/// Least J for which all `trials` seeded families of size J contain a
/// solvable index, found by doubling then bisection. threshold_value is
/// the matching theorem formula (thm1 for disjoint/general, thm3 for
/// x_spaced, thm4 J_min for arithmetic), constants 1.
ExperimentReport minimal_J_search(FamilyKind kind, const PrimeModulus& pm, double H,
                                  double K, const SpacingParams& spacing, double epsilon,
                                  std::size_t trials, std::uint64_t seed, int jobs = 1);

}  // namespace invlab
