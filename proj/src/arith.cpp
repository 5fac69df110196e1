#include "digitprimes/arith.hpp"

#include <cmath>
#include <string>

#include "digitprimes/error.hpp"

namespace digitprimes {

double nearest_int_distance(double x) {
    return std::abs(x - std::nearbyint(x));
}

long double nearest_int_distance(long double x) {
    return std::abs(x - std::nearbyintl(x));
}

double frac(double x) {
    double f = x - std::floor(x);
    // x slightly below an integer can round up to exactly 1.
    return f >= 1.0 ? 0.0 : f;
}

i64 gcd(i64 a, i64 b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 ipow(i64 b, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > static_cast<i128>(INT64_MAX)) {
            throw ResourceError("integer power " + std::to_string(b) + "^" + std::to_string(e) +
                                " exceeds 63 bits");
        }
    }
    return static_cast<i64>(r);
}

i64 powmod(i64 b, u64 e, i64 m) {
    if (m == 1) return 0;
    i128 result = 1;
    i128 base = mod_floor(b, m);
    while (e > 0) {
        if (e & 1U) result = result * base % m;
        base = base * base % m;
        e >>= 1U;
    }
    return static_cast<i64>(result);
}

std::vector<PrimeFactor> factorize(u64 n) {
    if (n == 0 || n > kMaxArithmetic) {
        throw PreconditionError("factorize: n must lie in [1, 2^34], got " + std::to_string(n));
    }
    std::vector<PrimeFactor> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

PhiMu euler_phi_moebius(u64 n) {
    PhiMu r{n, 1};
    for (const auto& [p, e] : factorize(n)) {
        r.phi = r.phi / p * (p - 1);
        r.mu = e > 1 ? 0 : -r.mu;
    }
    return r;
}

bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace digitprimes
