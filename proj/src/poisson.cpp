#include "invlab/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "invlab/kloosterman.hpp"

namespace invlab {

namespace {

std::uint64_t reduce_mod(std::int64_t v, std::uint64_t p) {
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::int64_t r = v % sp;
    if (r < 0) r += sp;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

void require_same_prime(const IntervalFamily& fam, const PrimeModulus& pm) {
    if (fam.p != pm.p())
        throw std::invalid_argument("family prime does not match the supplied PrimeModulus");
}

struct DirectParts {
    double S = 0.0, S1 = 0.0, S2 = 0.0;
};

/// S, S1, S2 by direct summation with m, n truncated at radius·x / radius·y
/// from the centers; terms beyond the windows are below 1e−18 each.
DirectParts direct_parts(const IntervalFamily& fam, const GaussianScale& sc,
                         const PrimeModulus& pm) {
    const auto p = static_cast<std::int64_t>(pm.p());
    const auto wm = static_cast<std::int64_t>(std::ceil(sc.radius * sc.x));
    const auto wn = static_cast<std::int64_t>(std::ceil(sc.radius * sc.y));
    long double S = 0.0L, S1 = 0.0L, S2 = 0.0L;
    for (std::size_t j = 0; j < fam.J(); ++j) {
        const std::int64_t Mj = fam.centers[j].first;
        const std::int64_t Nj = fam.centers[j].second;
        for (std::int64_t n = Nj - wn; n <= Nj + wn; ++n) {
            std::uint64_t nr = reduce_mod(n, pm.p());
            if (nr == 0) continue;  // (n,p) = 1 enforced
            auto m0 = static_cast<std::int64_t>(pm.inverse(nr));
            double wgt_n = weight(static_cast<double>(n - Nj) / sc.y);
            // all m ≡ m0 (mod p) with |m − Mj| ≤ wm
            std::int64_t lo = Mj - wm;
            std::int64_t first = m0 + p * static_cast<std::int64_t>(
                std::ceil(static_cast<double>(lo - m0) / static_cast<double>(p)));
            for (std::int64_t m = first; m <= Mj + wm; m += p) {
                double term = weight(static_cast<double>(m - Mj) / sc.x) * wgt_n;
                S += term;
                bool m_outside = std::abs(static_cast<double>(m - Mj)) > fam.H / 2.0;
                if (m_outside) {
                    S1 += term;
                } else if (std::abs(static_cast<double>(n - Nj)) > fam.K / 2.0) {
                    S2 += term;
                }
            }
        }
    }
    return {static_cast<double>(S), static_cast<double>(S1), static_cast<double>(S2)};
}

}  // namespace

DirectCount t_direct(const IntervalFamily& fam, const GaussianScale& sc,
                     const PrimeModulus& pm) {
    require_same_prime(fam, pm);
    fam.validate();
    DirectCount out;
    long double T = 0.0L;
    for (std::size_t j = 0; j < fam.J(); ++j) {
        const Interval I1 = fam.i1(j);
        const Interval I2 = fam.i2(j);
        const std::int64_t Mj = fam.centers[j].first;
        const std::int64_t Nj = fam.centers[j].second;
        for (std::int64_t n = I2.first_int(); n <= I2.last_int(); ++n) {
            // n ∈ (0,p), so n is invertible and m must equal n̄ itself.
            auto m = static_cast<std::int64_t>(pm.inverse(static_cast<std::uint64_t>(n)));
            if (!I1.contains(static_cast<double>(m))) continue;
            T += weight(static_cast<double>(m - Mj) / sc.x) *
                 weight(static_cast<double>(n - Nj) / sc.y);
            out.witnesses.push_back({j, m, n});
        }
    }
    out.T = static_cast<double>(T);
    return out;
}

double s_spectral(const IntervalFamily& fam, const GaussianScale& sc,
                  const PrimeModulus& pm, int jobs) {
    require_same_prime(fam, pm);
    fam.validate();
    if (!pm.has_tables())
        throw std::domain_error("s_spectral: p exceeds the table cap");
    if (fam.J() == 0) return 0.0;

    const std::uint64_t p = pm.p();
    const auto pd = static_cast<double>(p);
    const auto half = static_cast<std::int64_t>((p - 1) / 2);

    // Fold the l-sum onto residues: W[t] = Σ_{l ≡ t (p), |l| ≤ L} ŵ(ly/p).
    const auto L = static_cast<std::int64_t>(std::ceil(sc.radius * pd / sc.y));
    std::vector<double> W(p, 0.0);
    for (std::int64_t l = -L; l <= L; ++l)
        W[reduce_mod(l, p)] += weight(static_cast<double>(l) * sc.y / pd);

    // t-range: balanced residues with nonzero folded weight.
    const std::int64_t t_cut = (2 * L + 1 >= static_cast<std::int64_t>(p))
                                   ? half
                                   : std::min(half, L);

    // k-range: strata with F_k(x) above numerical noise. F_k(x) ≤ 2 ŵ(kx/p)
    // for balanced k, so cut where |k| x / p exceeds 4.2 (per-stratum < 1e−24).
    const auto k_noise = static_cast<std::int64_t>(std::ceil(4.2 * pd / sc.x));
    const std::int64_t k_cut = std::min(half, k_noise);

    std::vector<double> Fk(static_cast<std::size_t>(2 * k_cut + 1));
    for (std::int64_t k = -k_cut; k <= k_cut; ++k)
        Fk[static_cast<std::size_t>(k + k_cut)] = theta_tail(k, pm, sc.x, sc.radius);

    auto base = kloosterman_base(pm, /*use_chirp=*/p > 2048);
    const auto& roots = pm.root_table();
    const std::size_t J = fam.J();
    std::vector<std::uint64_t> Mr(J), Nr(J);
    for (std::size_t j = 0; j < J; ++j) {
        Mr[j] = reduce_mod(fam.centers[j].first, p);
        Nr[j] = reduce_mod(fam.centers[j].second, p);
    }

    const std::size_t t_len = static_cast<std::size_t>(2 * t_cut + 1);
    const std::uint64_t t0r = reduce_mod(-t_cut, p);

    // One k-stratum: F_k(x) Σ_j e(kM_j/p) Σ_t S(t,k;p) W(t) e(tN_j/p).
    auto stratum = [&](std::int64_t k, std::vector<double>& C) -> std::complex<double> {
        const std::uint64_t u = reduce_mod(k, p);  // second Kloosterman frequency
        std::uint64_t idx = mul_mod(t0r, u, p);
        for (std::size_t i = 0; i < t_len; ++i) {
            std::int64_t t = -t_cut + static_cast<std::int64_t>(i);
            double s_val;
            if (t == 0)
                s_val = (u == 0) ? static_cast<double>(p - 1) : -1.0;
            else
                s_val = base[idx];
            C[i] = s_val * W[reduce_mod(t, p)];
            idx += u;
            if (idx >= p) idx -= p;
        }
        std::complex<double> V{0.0, 0.0};
        for (std::size_t j = 0; j < J; ++j) {
            std::uint64_t ridx = mul_mod(t0r, Nr[j], p);
            double dre = 0.0, dim = 0.0;
            const std::uint64_t step = Nr[j];
            for (std::size_t i = 0; i < t_len; ++i) {
                const std::complex<double> r = roots[ridx];
                dre += C[i] * r.real();
                dim += C[i] * r.imag();
                ridx += step;
                if (ridx >= p) ridx -= p;
            }
            V += roots[mul_mod(reduce_mod(k, p), Mr[j], p)] * std::complex<double>(dre, dim);
        }
        return Fk[static_cast<std::size_t>(k + k_cut)] * V;
    };

    // Fixed-size k-blocks; per-block partials merged in block order, so the
    // result is identical for any worker count.
    constexpr std::int64_t kBlock = 64;
    const std::int64_t n_k = 2 * k_cut + 1;
    const std::size_t n_blocks = static_cast<std::size_t>((n_k + kBlock - 1) / kBlock);
    std::vector<std::complex<double>> partial(n_blocks, {0.0, 0.0});

    auto run_blocks = [&](std::size_t b_begin, std::size_t b_end) {
        std::vector<double> C(t_len);
        for (std::size_t b = b_begin; b < b_end; ++b) {
            std::complex<double> acc{0.0, 0.0};
            std::int64_t k_lo = -k_cut + static_cast<std::int64_t>(b) * kBlock;
            std::int64_t k_hi = std::min(k_cut, k_lo + kBlock - 1);
            for (std::int64_t k = k_lo; k <= k_hi; ++k) acc += stratum(k, C);
            partial[b] = acc;
        }
    };

    const int workers = std::max(1, jobs);
    if (workers == 1 || n_blocks <= 1) {
        run_blocks(0, n_blocks);
    } else {
        std::vector<std::thread> pool;
        const std::size_t per = (n_blocks + static_cast<std::size_t>(workers) - 1) /
                                static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t b0 = static_cast<std::size_t>(w) * per;
            std::size_t b1 = std::min(n_blocks, b0 + per);
            if (b0 >= b1) break;
            pool.emplace_back(run_blocks, b0, b1);
        }
        for (auto& th : pool) th.join();
    }

    long double total_re = 0.0L;
    for (const auto& part : partial) total_re += part.real();
    return static_cast<double>(sc.x * sc.y / (pd * pd) * total_re);
}

SumDecomposition s_decompose(const IntervalFamily& fam, const GaussianScale& sc,
                             const PrimeModulus& pm, int jobs) {
    require_same_prime(fam, pm);
    fam.validate();
    SumDecomposition out;
    if (fam.J() == 0) return out;
    DirectParts dp = direct_parts(fam, sc, pm);
    out.S = dp.S;
    out.S1 = dp.S1;
    out.S2 = dp.S2;
    out.T = t_direct(fam, sc, pm).T;
    out.main_term_paper = static_cast<double>(fam.J()) * sc.x * sc.y /
                          static_cast<double>(pm.p());
    out.S_spectral = s_spectral(fam, sc, pm, jobs);
    out.residual = std::abs(out.S - out.S_spectral) / (1.0 + std::abs(out.S));
    return out;
}

std::complex<double> family_exponential_sum(std::int64_t k, std::int64_t l,
                                            const IntervalFamily& fam,
                                            const PrimeModulus& pm) {
    require_same_prime(fam, pm);
    const std::uint64_t p = pm.p();
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [Mj, Nj] : fam.centers) {
        std::uint64_t idx = (mul_mod(reduce_mod(k, p), reduce_mod(Mj, p), p) +
                             mul_mod(reduce_mod(l, p), reduce_mod(Nj, p), p)) % p;
        sum += pm.root(idx);
    }
    return sum;
}

GeometricBound geometric_bound_check(std::int64_t k, std::int64_t l,
                                     const IntervalFamily& fam, const PrimeModulus& pm) {
    require_same_prime(fam, pm);
    if (fam.kind != FamilyKind::arithmetic)
        throw std::domain_error("geometric_bound_check: family must be arithmetic kind");
    const auto J = static_cast<double>(fam.J());
    const auto pd = static_cast<double>(pm.p());
    double theta = (static_cast<double>(k) * static_cast<double>(fam.X) +
                    static_cast<double>(l) * static_cast<double>(fam.Y)) / pd;
    double dist = dist_nearest_int(theta);
    GeometricBound out;
    if (dist == 0.0) {
        out.exact = J;
        out.bound = J;
    } else {
        double frac = theta - std::floor(theta);
        out.exact = std::abs(std::sin(std::numbers::pi * J * frac) /
                             std::sin(std::numbers::pi * frac));
        out.bound = std::min(1.0 / (2.0 * dist), J);
    }
    out.holds = out.exact <= out.bound * (1.0 + 1e-12);
    return out;
}

double poisson_residual(const IntervalFamily& fam, const GaussianScale& sc,
                        const PrimeModulus& pm, int jobs) {
    if (fam.J() == 0) return 0.0;
    double s_dir = direct_parts(fam, sc, pm).S;
    double s_spec = s_spectral(fam, sc, pm, jobs);
    return std::abs(s_dir - s_spec) / (1.0 + std::abs(s_dir));
}

}  // namespace invlab
