#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "invlab/interval.hpp"
#include "invlab/modular.hpp"

namespace invlab {

/// Complete Kloosterman sum S(a,b;p) = Σ_{c=1}^{p−1} e((ac + b c̄)/p).
/// The sum is real for prime p; the complex value is kept so reality can
/// be asserted rather than assumed.
struct KloostermanValue {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t p = 0;
    std::complex<double> value;
    bool reduced = false;  // true if S(a,b;p) = S(1, ab; p) was used
};

/// Direct evaluation by compensated summation over ascending c.
KloostermanValue kloosterman(std::uint64_t a, std::uint64_t b, const PrimeModulus& pm);

/// The base table t ↦ S(1,t;p) for t = 0..p−1.
/// use_chirp selects a Bluestein prime-length DFT; the default is the
/// naive O(p^2) build from root-table lookups.
std::vector<double> kloosterman_base(const PrimeModulus& pm, bool use_chirp = false);

/// row[b] = S(a,b;p) for b = 0..p−1.
/// fast = false: p−1 independent direct sums.
/// fast = true: reduction through the base table, row[b] = base[ab mod p]
/// (Ramanujan values when p | a), base built with the chirp transform.
std::vector<double> kloosterman_row(std::uint64_t a, const PrimeModulus& pm, bool fast = false);

/// |S(a,b;p)| / (2√p). Throws std::domain_error when b ≡ 0 (mod p),
/// where Weil's bound does not apply.
double weil_margin(std::uint64_t a, std::uint64_t b, const PrimeModulus& pm);

/// Σ_{n ∈ I ∩ ℤ} e(l n̄ / p). Requires I ⊆ (0, p).
std::complex<double> incomplete_kloosterman(const Interval& I, std::uint64_t l,
                                            const PrimeModulus& pm);

struct MeanValueCheck {
    double lhs = 0.0;   // Σ_j |Σ_{n∈I_j} e(l n̄/p)|²
    double rhs = 0.0;   // 2^12 · p · (log H)²
    bool holds = false;
};

/// Mean-value inequality for short Kloosterman sums over disjoint
/// intervals I_j ⊆ (0,p) with H/2 ≤ |I_j| ≤ H (real interval length)
/// and l ≢ 0 (mod p).
MeanValueCheck mean_value_check(std::span<const Interval> intervals, double H,
                                std::uint64_t l, const PrimeModulus& pm);

/// Forward DFT X_t = Σ_d x_d e(td/p) of a prime-length sequence via
/// Bluestein's chirp factorization. Exposed for direct testing.
std::vector<std::complex<double>> chirp_dft(std::span<const std::complex<double>> x,
                                            const PrimeModulus& pm);

}  // namespace invlab
