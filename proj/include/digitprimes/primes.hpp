#ifndef DIGITPRIMES_PRIMES_HPP
#define DIGITPRIMES_PRIMES_HPP

#include <cmath>
#include <filesystem>
#include <span>
#include <vector>

#include "digitprimes/arith.hpp"

namespace digitprimes {

struct PrimePower {
    u64 n;  // p^j, j >= 2
    u64 p;
};

// Primes below `limit` plus the von Mangoldt function over prime powers.
// Lambda is stored per prime power (primes, then the sparse list of higher
// powers), never per integer.
class PrimeTable {
public:
    PrimeTable() = default;
    PrimeTable(u64 limit, std::vector<u64> primes);

    u64 limit() const { return limit_; }
    std::span<const u64> primes() const { return primes_; }
    // Prime powers p^j < limit with j >= 2, ascending in n.
    std::span<const PrimePower> higher_powers() const { return higher_; }

    bool is_prime(u64 n) const;
    double mangoldt(u64 n) const;

    // pi(x) = #{p < x}; x <= limit.
    u64 count_below(u64 x) const;
    // sum_{n < x} Lambda(n); x <= limit.
    double psi_below(u64 x) const;
    // psi_prefix[n] = sum_{m <= n} Lambda(m) for n < limit. O(limit) memory.
    std::vector<double> psi_prefix() const;
    // Dense Lambda(n) for n < x; x <= limit.
    std::vector<double> mangoldt_sequence(u64 x) const;

    // Calls f(n, log p) for every prime power n < x, primes first.
    template <typename F>
    void for_each_prime_power(u64 x, F&& f) const;

private:
    u64 limit_ = 0;
    std::vector<u64> primes_;
    std::vector<PrimePower> higher_;
};

inline constexpr u64 kMaxSieveLimit = u64{1} << 34;

// Segmented sieve of Eratosthenes; limit in [2, 2^34]. Segments are
// distributed over `workers` threads (0 = hardware concurrency).
PrimeTable sieve_primes(u64 limit, unsigned workers = 1);

// Versioned binary cache: "DGPR1", limit as u64 little-endian, then the prime
// gaps (first gap measured from 0) as LEB128 varints.
void write_prime_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable read_prime_cache(const std::filesystem::path& path);

// Loads limit's table from cache_dir when present there, otherwise sieves
// and writes it. An empty cache_dir disables caching.
PrimeTable load_or_sieve(u64 limit, const std::filesystem::path& cache_dir, unsigned workers = 1);

template <typename F>
void PrimeTable::for_each_prime_power(u64 x, F&& f) const {
    for (u64 p : primes_) {
        if (p >= x) break;
        f(p, std::log(static_cast<double>(p)));
    }
    for (const auto& pp : higher_) {
        if (pp.n >= x) break;
        f(pp.n, std::log(static_cast<double>(pp.p)));
    }
}

} // namespace digitprimes

#endif // DIGITPRIMES_PRIMES_HPP
