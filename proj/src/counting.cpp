#include "digitprimes/counting.hpp"

#include <cmath>
#include <string>

#include "digitprimes/error.hpp"

namespace digitprimes {

u64 checked_power(Base b, int k, u64 bound, const char* what) {
    if (k < 1) throw PreconditionError(std::string(what) + ": k must be >= 1");
    long double n = std::pow(static_cast<long double>(b.value()), k);
    if (n > static_cast<long double>(bound)) {
        throw ResourceError(std::string(what) + ": b^k = " + std::to_string(b.value()) + "^" + std::to_string(k) +
                            " exceeds the bound " + std::to_string(bound));
    }
    return static_cast<u64>(ipow(b, k));
}

double count_constrained_primes(const DigitConstraint& c, Base b, int k, bool weighted, const PrimeTable& table) {
    c.validate(b, k);
    const u64 x = checked_power(b, k, table.limit(), "count_constrained_primes");
    if (!weighted) {
        u64 count = 0;
        for (u64 p : table.primes()) {
            if (p >= x) break;
            if (c.holds(p, b, k)) ++count;
        }
        return static_cast<double>(count);
    }
    long double s = 0.0L;
    table.for_each_prime_power(x, [&](u64 n, double lp) {
        if (c.holds(n, b, k)) s += lp;
    });
    return static_cast<double>(s);
}

double count_constrained_primes(const DigitConstraint& c, Base b, int k, bool weighted) {
    c.validate(b, k);
    const u64 x = checked_power(b, k, kMaxSieveLimit, "count_constrained_primes");
    return count_constrained_primes(c, b, k, weighted, sieve_primes(std::max<u64>(x, 2)));
}

} // namespace digitprimes
