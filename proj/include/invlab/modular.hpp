#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace invlab {

/// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(std::uint64_t n);

/// Distance from z to the nearest integer, in [0, 1/2].
double dist_nearest_int(double z);

/// (base^exp) mod m without overflow.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Extended-Euclid inverse of n mod p. Throws std::domain_error if n ≡ 0 (mod p).
std::uint64_t mod_inverse_euclid(std::uint64_t n, std::uint64_t p);

/// A verified odd prime with optional batch inverse and root-of-unity tables.
///
/// Construction verifies primality and rejects p = 2. When p fits under
/// table_cap, an inverse table (batch-inversion trick: prefix products,
/// one p-2 power, unwind) and a root table e(a/p) are built. Everything
/// is immutable after construction and safe to share across threads.
class PrimeModulus {
public:
    static constexpr std::uint64_t kDefaultTableCap = 10'000'000;

    explicit PrimeModulus(std::uint64_t p, std::uint64_t table_cap = kDefaultTableCap);

    std::uint64_t p() const { return p_; }
    std::uint64_t table_cap() const { return cap_; }
    bool has_tables() const { return !inv_table_.empty(); }

    /// n̄ with 1 ≤ n̄ ≤ p−1 and n·n̄ ≡ 1 (mod p). Throws on n ≡ 0 (mod p).
    std::uint64_t inverse(std::uint64_t n) const;

    /// Representative r ≡ k (mod p) with −(p−1)/2 ≤ r ≤ (p−1)/2.
    std::int64_t balanced(std::int64_t k) const;

    /// e(a/p) = exp(2πi a/p); table lookup when tables exist.
    std::complex<double> root(std::uint64_t a) const;

    /// Direct access for hot loops; valid only when has_tables().
    const std::vector<std::complex<double>>& root_table() const { return root_table_; }
    const std::vector<std::uint32_t>& inverse_table() const { return inv_table_; }

private:
    std::uint64_t p_;
    std::uint64_t cap_;
    std::vector<std::uint32_t> inv_table_;
    std::vector<std::complex<double>> root_table_;
};

}  // namespace invlab
