#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "invlab/family.hpp"
#include "invlab/gaussian.hpp"
#include "invlab/modular.hpp"

namespace invlab {

struct Witness {
    std::size_t j = 0;
    std::int64_t m = 0;
    std::int64_t n = 0;
};

struct DirectCount {
    double T = 0.0;
    std::vector<Witness> witnesses;  // all (j, m, n) with m ≡ n̄ contributing to T
};

/// The smoothed counting sum T over the family's interval pairs.
/// T > 0 exactly when witnesses is nonempty.
DirectCount t_direct(const IntervalFamily& fam, const GaussianScale& sc,
                     const PrimeModulus& pm);

struct SumDecomposition {
    double T = 0.0;
    double S = 0.0;
    double S1 = 0.0;         // |m−M_j| > H/2 stratum
    double S2 = 0.0;         // |m−M_j| ≤ H/2, |n−N_j| > K/2 stratum
    double S_spectral = 0.0;
    double main_term_paper = 0.0;  // Jxy/p · ŵ(0)²
    double residual = 0.0;         // |S − S_spectral| / (1 + |S|)
};

/// Full decomposition T = S − S1 − S2 with the spectral recomputation of S.
SumDecomposition s_decompose(const IntervalFamily& fam, const GaussianScale& sc,
                             const PrimeModulus& pm, int jobs = 1);

/// Exact spectral value of S through the Kloosterman base table:
/// (xy/p²) Σ_k Σ_l S(l,−k;p) F_k(x) ŵ(ly/p) Σ_j e((kM_j+lN_j)/p),
/// with k over the full balanced range and l truncated at radius·p/y.
/// The l-sum is folded onto residues before the k loop. The k = 0 stratum
/// stays inside the formula (Ramanujan values), so the identity with the
/// direct S is exact rather than main-term approximate.
double s_spectral(const IntervalFamily& fam, const GaussianScale& sc,
                  const PrimeModulus& pm, int jobs = 1);

/// E(k,l) = Σ_j e((k M_j + l N_j)/p).
std::complex<double> family_exponential_sum(std::int64_t k, std::int64_t l,
                                            const IntervalFamily& fam,
                                            const PrimeModulus& pm);

struct GeometricBound {
    double exact = 0.0;  // |Σ_{j=1}^J e(jθ)|, θ = (kX+lY)/p
    double bound = 0.0;  // min{1/(2||θ||), J}
    bool holds = false;
};

/// Geometric-sum estimate for arithmetic families.
GeometricBound geometric_bound_check(std::int64_t k, std::int64_t l,
                                     const IntervalFamily& fam, const PrimeModulus& pm);

/// |S_direct − S_spectral| / (1 + |S_direct|).
double poisson_residual(const IntervalFamily& fam, const GaussianScale& sc,
                        const PrimeModulus& pm, int jobs = 1);

}  // namespace invlab
