#pragma once

#include <complex>
#include <cstdint>

#include "invlab/modular.hpp"

namespace invlab {

/// w(t) = exp(−π t²), self-dual under the Fourier transform.
double weight(double t);

/// Smoothing scales x = H/(log p)^{1/2+ε}, y = K/(log p)^{1/2+ε} and the
/// Gaussian truncation radius (per-term weight below 1e−18 at the default).
struct GaussianScale {
    double H = 0.0;
    double K = 0.0;
    double epsilon = 0.5;
    double x = 0.0;
    double y = 0.0;
    double radius = 3.7;
};

/// Builds scales for (H, K, p, ε). Throws std::domain_error when the
/// resulting x or y falls below 1 (the analysis requires x, y ≥ 1),
/// when ε ∉ (0, 1/2], or when H or K is outside (0, p].
GaussianScale scales(double H, double K, const PrimeModulus& pm, double epsilon = 0.5,
                     double radius = 3.7);

/// Wrapped Gaussian tail F_k(x) = Σ_{r∈ℤ} w((k/p + r) x), truncated where
/// |k/p + r| > radius/x. k is reduced to its balanced residue.
double theta_tail(std::int64_t k, const PrimeModulus& pm, double x, double radius = 3.7);

struct SmoothedIntervalSum {
    std::complex<double> direct;    // Σ_m w((m−M)/x) e(km/p), truncated
    std::complex<double> spectral;  // x · e(kM/p) · F_k(x)
    double difference = 0.0;        // |direct − spectral|
};

/// Both sides of the one-dimensional Poisson identity for a smoothed
/// interval centered at M with frequency k.
SmoothedIntervalSum smoothed_interval_sum(std::int64_t M, double x, std::int64_t k,
                                          const PrimeModulus& pm, double radius = 3.7);

}  // namespace invlab
