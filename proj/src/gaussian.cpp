#include "invlab/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invlab {

double weight(double t) { return std::exp(-std::numbers::pi * t * t); }

GaussianScale scales(double H, double K, const PrimeModulus& pm, double epsilon,
                     double radius) {
    const auto p = static_cast<double>(pm.p());
    if (!(epsilon > 0.0 && epsilon <= 0.5))
        throw std::domain_error("scales: epsilon must lie in (0, 1/2]");
    if (!(H > 0.0 && H <= p) || !(K > 0.0 && K <= p))
        throw std::domain_error("scales: H and K must lie in (0, p]");
    if (!(radius >= 3.7))
        throw std::domain_error("scales: radius must be at least 3.7");
    double lg = std::pow(std::log(p), 0.5 + epsilon);
    GaussianScale sc{H, K, epsilon, H / lg, K / lg, radius};
    if (sc.x < 1.0 || sc.y < 1.0)
        throw std::domain_error("scales: x or y below 1; H, K too small for this p");
    return sc;
}

double theta_tail(std::int64_t k, const PrimeModulus& pm, double x, double radius) {
    if (!(x >= 1.0)) throw std::domain_error("theta_tail: x must be at least 1");
    const auto p = static_cast<double>(pm.p());
    double u0 = static_cast<double>(pm.balanced(k)) / p;
    double cut = radius / x;
    // u = u0 + r over the window |u| <= cut
    auto r_lo = static_cast<std::int64_t>(std::ceil(-u0 - cut));
    auto r_hi = static_cast<std::int64_t>(std::floor(-u0 + cut));
    double sum = 0.0;
    for (std::int64_t r = r_lo; r <= r_hi; ++r)
        sum += weight((u0 + static_cast<double>(r)) * x);
    return sum;
}

SmoothedIntervalSum smoothed_interval_sum(std::int64_t M, double x, std::int64_t k,
                                          const PrimeModulus& pm, double radius) {
    if (!(x >= 1.0)) throw std::domain_error("smoothed_interval_sum: x must be at least 1");
    const std::uint64_t p = pm.p();
    SmoothedIntervalSum out;
    auto half = static_cast<std::int64_t>(std::ceil(radius * x));
    std::complex<double> direct{0.0, 0.0};
    std::uint64_t ku = static_cast<std::uint64_t>(
        ((k % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
        static_cast<std::int64_t>(p));
    for (std::int64_t m = M - half; m <= M + half; ++m) {
        std::int64_t mm = ((m % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                          static_cast<std::int64_t>(p);
        std::uint64_t idx = static_cast<unsigned __int128>(ku) *
                            static_cast<std::uint64_t>(mm) % p;
        direct += weight(static_cast<double>(m - M) / x) * pm.root(idx);
    }
    out.direct = direct;
    std::uint64_t mk = static_cast<unsigned __int128>(ku) *
                       static_cast<std::uint64_t>(((M % static_cast<std::int64_t>(p)) +
                                                   static_cast<std::int64_t>(p)) %
                                                  static_cast<std::int64_t>(p)) % p;
    out.spectral = x * pm.root(mk) * theta_tail(k, pm, x, radius);
    out.difference = std::abs(out.direct - out.spectral);
    return out;
}

}  // namespace invlab
