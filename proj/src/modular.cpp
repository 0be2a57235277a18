#include "invlab/modular.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace invlab {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    unsigned __int128 result = 1;
    unsigned __int128 b = base % m;
    while (exp > 0) {
        if (exp & 1) result = result * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int r) {
    std::uint64_t x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    // Sinclair's witness set, deterministic for all 64-bit integers.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (a % n == 0) continue;
        if (miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

double dist_nearest_int(double z) {
    double f = z - std::floor(z);
    return std::min(f, 1.0 - f);
}

std::uint64_t mod_inverse_euclid(std::uint64_t n, std::uint64_t p) {
    n %= p;
    if (n == 0) throw std::domain_error("mod_inverse: n is divisible by p");
    std::int64_t a = static_cast<std::int64_t>(n), m = static_cast<std::int64_t>(p);
    std::int64_t x0 = 1, x1 = 0;
    while (m != 0) {
        std::int64_t q = a / m;
        std::int64_t t = a - q * m; a = m; m = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
    }
    std::int64_t r = x0 % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r);
}

PrimeModulus::PrimeModulus(std::uint64_t p, std::uint64_t table_cap) : p_(p), cap_(table_cap) {
    if (p == 2) throw std::invalid_argument("PrimeModulus: p = 2 is rejected, an odd prime is required");
    if (!is_prime(p)) throw std::invalid_argument("PrimeModulus: " + std::to_string(p) + " is not prime");
    if (p <= cap_) {
        // Batch inversion: prefix products, one inversion via p-2 power, unwind.
        inv_table_.assign(p, 0);
        std::vector<std::uint64_t> prefix(p);
        prefix[0] = 1;
        for (std::uint64_t n = 1; n < p; ++n)
            prefix[n] = static_cast<std::uint64_t>(
                static_cast<unsigned __int128>(prefix[n - 1]) * n % p);
        std::uint64_t acc = mod_pow(prefix[p - 1], p - 2, p);
        for (std::uint64_t n = p - 1; n >= 1; --n) {
            inv_table_[n] = static_cast<std::uint32_t>(
                static_cast<unsigned __int128>(acc) * prefix[n - 1] % p);
            acc = static_cast<std::uint64_t>(static_cast<unsigned __int128>(acc) * n % p);
        }

        root_table_.resize(p);
        const double two_pi = 2.0 * std::numbers::pi;
        for (std::uint64_t a = 0; a < p; ++a) {
            double arg = two_pi * static_cast<double>(a) / static_cast<double>(p);
            root_table_[a] = {std::cos(arg), std::sin(arg)};
        }
    }
}

std::uint64_t PrimeModulus::inverse(std::uint64_t n) const {
    n %= p_;
    if (n == 0) throw std::domain_error("mod_inverse: n is divisible by p");
    if (!inv_table_.empty()) return inv_table_[n];
    return mod_inverse_euclid(n, p_);
}

std::int64_t PrimeModulus::balanced(std::int64_t k) const {
    std::int64_t sp = static_cast<std::int64_t>(p_);
    std::int64_t r = k % sp;
    if (r < 0) r += sp;
    if (r > (sp - 1) / 2) r -= sp;
    return r;
}

std::complex<double> PrimeModulus::root(std::uint64_t a) const {
    a %= p_;
    if (!root_table_.empty()) return root_table_[a];
    double arg = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(p_);
    return {std::cos(arg), std::sin(arg)};
}

}  // namespace invlab
