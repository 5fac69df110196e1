#ifndef DIGITPRIMES_ARITH_HPP
#define DIGITPRIMES_ARITH_HPP

#include <cstdint>
#include <vector>

namespace digitprimes {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline constexpr u64 kMaxArithmetic = u64{1} << 34;

// Distance from x to the nearest integer, in [0, 1/2].
double nearest_int_distance(double x);
long double nearest_int_distance(long double x);

// Reduces a real to its fractional part in [0, 1).
double frac(double x);

i64 gcd(i64 a, i64 b);

// a mod m with the result in [0, m).
i64 mod_floor(i64 a, i64 m);

// b^e as an exact integer; throws ResourceError if it does not fit in 63 bits.
i64 ipow(i64 b, int e);

// b^e mod m.
i64 powmod(i64 b, u64 e, i64 m);

struct PrimeFactor {
    u64 p;
    int multiplicity;
};

// Trial-division factorization; n in [1, 2^34].
std::vector<PrimeFactor> factorize(u64 n);

struct PhiMu {
    u64 phi;
    int mu;

    friend bool operator==(const PhiMu&, const PhiMu&) = default;
};

PhiMu euler_phi_moebius(u64 n);

bool is_prime_trial(u64 n);

} // namespace digitprimes

#endif // DIGITPRIMES_ARITH_HPP
