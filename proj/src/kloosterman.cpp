#include "invlab/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace invlab {

namespace {

/// Kahan-compensated complex accumulator.
struct CompensatedSum {
    std::complex<double> sum{0.0, 0.0};
    std::complex<double> c{0.0, 0.0};

    void add(std::complex<double> term) {
        std::complex<double> y = term - c;
        std::complex<double> t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

void check_table_cap(const PrimeModulus& pm, const char* what) {
    if (!pm.has_tables())
        throw std::domain_error(std::string(what) + ": p exceeds the table cap");
}

// In-place iterative radix-2 FFT, n a power of two. sign = +1 forward e(+jk/n).
void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace

KloostermanValue kloosterman(std::uint64_t a, std::uint64_t b, const PrimeModulus& pm) {
    const std::uint64_t p = pm.p();
    a %= p;
    b %= p;
    CompensatedSum acc;
    for (std::uint64_t c = 1; c < p; ++c) {
        std::uint64_t idx = (a % p * static_cast<unsigned __int128>(c) +
                             b % p * static_cast<unsigned __int128>(pm.inverse(c))) % p;
        acc.add(pm.root(idx));
    }
    return {a, b, p, acc.sum, false};
}

std::vector<std::complex<double>> chirp_dft(std::span<const std::complex<double>> x,
                                            const PrimeModulus& pm) {
    const std::uint64_t p = pm.p();
    if (x.size() != p) throw std::invalid_argument("chirp_dft: sequence length must equal p");
    check_table_cap(pm, "chirp_dft");

    // e(td/p) = b_t b_d conj(b_{t-d}) with b_n = e(half n^2 / p), half = (p+1)/2.
    const std::uint64_t half = (p + 1) / 2;
    std::vector<std::complex<double>> chirp(p);
    for (std::uint64_t n = 0; n < p; ++n) {
        std::uint64_t n2 = static_cast<unsigned __int128>(n) * n % p;
        chirp[n] = pm.root(static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(half) * n2 % p));
    }

    std::size_t n_fft = 1;
    while (n_fft < 2 * p - 1) n_fft <<= 1;

    std::vector<std::complex<double>> u(n_fft), v(n_fft);
    for (std::uint64_t d = 0; d < p; ++d) u[d] = x[d] * chirp[d];
    // v[m + p - 1] = conj(b_m) for m in [-(p-1), p-1]
    for (std::int64_t m = -static_cast<std::int64_t>(p) + 1;
         m < static_cast<std::int64_t>(p); ++m) {
        std::uint64_t am = static_cast<std::uint64_t>(m < 0 ? -m : m);
        v[static_cast<std::size_t>(m + static_cast<std::int64_t>(p) - 1)] = std::conj(chirp[am]);
    }

    fft_pow2(u, +1);
    fft_pow2(v, +1);
    for (std::size_t i = 0; i < n_fft; ++i) u[i] *= v[i];
    fft_pow2(u, -1);
    const double inv_n = 1.0 / static_cast<double>(n_fft);

    std::vector<std::complex<double>> out(p);
    for (std::uint64_t t = 0; t < p; ++t)
        out[t] = chirp[t] * u[t + p - 1] * inv_n;
    return out;
}

std::vector<double> kloosterman_base(const PrimeModulus& pm, bool use_chirp) {
    const std::uint64_t p = pm.p();
    check_table_cap(pm, "kloosterman_base");
    std::vector<double> base(p);
    if (!use_chirp) {
        for (std::uint64_t t = 0; t < p; ++t) {
            CompensatedSum acc;
            for (std::uint64_t c = 1; c < p; ++c) {
                std::uint64_t idx = (c + static_cast<unsigned __int128>(t) * pm.inverse(c)) % p;
                acc.add(pm.root(idx));
            }
            base[t] = acc.sum.real();
        }
        return base;
    }
    // S(1,t;p) = Σ_{d=1}^{p−1} e(d̄/p) e(td/p): a prime-length DFT of d ↦ e(d̄/p).
    std::vector<std::complex<double>> seq(p, {0.0, 0.0});
    for (std::uint64_t d = 1; d < p; ++d) seq[d] = pm.root(pm.inverse(d));
    auto dft = chirp_dft(seq, pm);
    for (std::uint64_t t = 0; t < p; ++t) base[t] = dft[t].real();
    return base;
}

std::vector<double> kloosterman_row(std::uint64_t a, const PrimeModulus& pm, bool fast) {
    const std::uint64_t p = pm.p();
    check_table_cap(pm, "kloosterman_row");
    a %= p;
    std::vector<double> row(p);
    if (a == 0) {
        // S(0,b;p): Ramanujan values.
        for (std::uint64_t b = 0; b < p; ++b)
            row[b] = (b == 0) ? static_cast<double>(p - 1) : -1.0;
        return row;
    }
    if (!fast) {
        for (std::uint64_t b = 0; b < p; ++b)
            row[b] = kloosterman(a, b, pm).value.real();
        return row;
    }
    auto base = kloosterman_base(pm, /*use_chirp=*/true);
    for (std::uint64_t b = 0; b < p; ++b)
        row[b] = base[static_cast<unsigned __int128>(a) * b % p];
    return row;
}

double weil_margin(std::uint64_t a, std::uint64_t b, const PrimeModulus& pm) {
    if (b % pm.p() == 0)
        throw std::domain_error("weil_margin: b ≡ 0 (mod p), Weil's bound does not apply");
    auto kv = kloosterman(a, b, pm);
    return std::abs(kv.value) / (2.0 * std::sqrt(static_cast<double>(pm.p())));
}

std::complex<double> incomplete_kloosterman(const Interval& I, std::uint64_t l,
                                            const PrimeModulus& pm) {
    const auto p = static_cast<double>(pm.p());
    if (!(I.lo > 0.0 && I.hi < p))
        throw std::domain_error("incomplete_kloosterman: interval must be contained in (0,p)");
    l %= pm.p();
    CompensatedSum acc;
    for (std::int64_t n = I.first_int(); n <= I.last_int(); ++n) {
        std::uint64_t idx = static_cast<unsigned __int128>(l) *
                            pm.inverse(static_cast<std::uint64_t>(n)) % pm.p();
        acc.add(pm.root(idx));
    }
    return acc.sum;
}

MeanValueCheck mean_value_check(std::span<const Interval> intervals, double H,
                                std::uint64_t l, const PrimeModulus& pm) {
    if (l % pm.p() == 0)
        throw std::domain_error("mean_value_check: l ≡ 0 (mod p) is outside Theorem scope");
    const auto p = static_cast<double>(pm.p());
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        const Interval& I = intervals[j];
        if (!(I.lo > 0.0 && I.hi < p))
            throw std::domain_error("mean_value_check: interval not contained in (0,p)");
        if (!(I.length() >= H / 2.0 && I.length() <= H))
            throw std::domain_error("mean_value_check: interval length outside [H/2, H]");
        for (std::size_t k = j + 1; k < intervals.size(); ++k)
            if (I.overlaps(intervals[k]))
                throw std::domain_error("mean_value_check: intervals overlap");
    }
    MeanValueCheck out;
    for (const Interval& I : intervals) {
        double m = std::abs(incomplete_kloosterman(I, l, pm));
        out.lhs += m * m;
    }
    double lh = std::log(H);
    out.rhs = 4096.0 * p * lh * lh;
    out.holds = out.lhs <= out.rhs;
    return out;
}

}  // namespace invlab
