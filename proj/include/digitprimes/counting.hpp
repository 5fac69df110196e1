#ifndef DIGITPRIMES_COUNTING_HPP
#define DIGITPRIMES_COUNTING_HPP

#include "digitprimes/digits.hpp"
#include "digitprimes/primes.hpp"

namespace digitprimes {

// Brute-force oracle over the sieve. Weighted: sum_{n<b^k} Lambda(n) 1_A(n);
// unweighted: #{p < b^k : p satisfies the constraint}.
// Requires b^k <= table.limit().
double count_constrained_primes(const DigitConstraint& c, Base b, int k, bool weighted, const PrimeTable& table);

// Sieves b^k itself; b^k <= 2^34.
double count_constrained_primes(const DigitConstraint& c, Base b, int k, bool weighted);

// b^k as u64, or ResourceError when it exceeds `bound`.
u64 checked_power(Base b, int k, u64 bound, const char* what);

} // namespace digitprimes

#endif // DIGITPRIMES_COUNTING_HPP
