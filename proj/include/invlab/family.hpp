#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invlab/interval.hpp"
#include "invlab/modular.hpp"

namespace invlab {

enum class FamilyKind { general, disjoint, x_spaced, arithmetic };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

/// Spacing constraints for generated families: X is the minimal wrapped
/// spacing of the M_j (and the first progression step for arithmetic
/// families); Y is the second progression step, arithmetic kind only.
struct SpacingParams {
    double X = 0.0;
    std::int64_t Y = 0;
};

/// J pairs of closed intervals in (0,p): I1_j centered at M_j with width H,
/// I2_j centered at N_j with width K.
struct IntervalFamily {
    std::uint64_t p = 0;
    double H = 0.0;
    double K = 0.0;
    FamilyKind kind = FamilyKind::general;
    std::vector<std::pair<std::int64_t, std::int64_t>> centers;  // (M_j, N_j)

    // Progression parameters, meaningful when kind == arithmetic:
    // M_j = M + jX, N_j = N + jY for j = 1..J.
    std::int64_t M = 0, N = 0, X = 0, Y = 0;

    std::size_t J() const { return centers.size(); }
    Interval i1(std::size_t j) const { return Interval::centered(centers[j].first, H); }
    Interval i2(std::size_t j) const { return Interval::centered(centers[j].second, K); }

    /// Checks containment in (0,p) and the kind's structural invariant;
    /// throws std::domain_error naming the first violation.
    void validate() const;
};

}  // namespace invlab
