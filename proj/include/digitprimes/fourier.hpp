#ifndef DIGITPRIMES_FOURIER_HPP
#define DIGITPRIMES_FOURIER_HPP

#include <complex>
#include <iosfwd>
#include <vector>

#include "digitprimes/digits.hpp"
#include "digitprimes/rational.hpp"

namespace digitprimes {

using Amplitude = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Below this distance from an integer a geometric factor is summed directly.
inline constexpr double kSingularThreshold = 1e-9;

// Largest b^k the O(b^k) oracles and spectra accept.
inline constexpr u64 kOracleLimit = 10'000'000;
inline constexpr u64 kSpectrumLimit = 100'000'000;

// e(t) = exp(2 pi i t).
Amplitude unit(double t);

// sum_{n<b} e(n x), via the Dirichlet-kernel form of the geometric ratio
// (e(bx)-1)/(e(x)-1), or by direct summation when ||x|| < kSingularThreshold.
Amplitude geometric_sum(double x, int b);

// The constraint's Fourier transform sum_{n<b^k} f(n) e(n theta) from its
// length-k digit product. f is the indicator for MissingDigit and
// PrescribedDigits, and the character e(alpha s_b(n)) for DigitSumResidue.
Amplitude fourier_eval(const DigitConstraint& c, const Frequency& theta, Base b, int k);

// g-hat for an arbitrary character frequency alpha (no coprimality needed).
Amplitude character_eval(const Rational& alpha, const Frequency& theta, Base b, int k);

// O(b^k) direct summation; b^k <= kOracleLimit.
Amplitude naive_fourier_oracle(const DigitConstraint& c, const Frequency& theta, Base b, int k);

// d/dtheta of fourier_eval, by the product rule over the k digit levels.
Amplitude fourier_derivative_eval(const DigitConstraint& c, const Frequency& theta, Base b, int k);

// Modulus of each of the k digit-level factors, lowest level first.
std::vector<double> factor_moduli(const DigitConstraint& c, const Frequency& theta, Base b, int k);

// {F(theta + a/b^k)}_{0 <= a < b^k} in O(b^k): level i of the product only
// depends on a mod b^(k-i), so the table is built one digit at a time.
std::vector<Amplitude> shifted_spectrum(const DigitConstraint& c, const Frequency& theta, Base b, int k);

inline std::vector<Amplitude> full_spectrum(const DigitConstraint& c, Base b, int k) {
    return shifted_spectrum(c, Frequency{}, b, k);
}

// Spectrum of the indicator 1_A at a/b^k. Same as full_spectrum except for
// DigitSumResidue, where the m characters are combined into the residue-class
// indicator.
std::vector<Amplitude> indicator_spectrum(const DigitConstraint& c, Base b, int k);

// CSV with header "a,re,im,modulus".
void write_spectrum_csv(std::ostream& os, const std::vector<Amplitude>& spectrum);

// sum_a |F(a/N)|^2.
double spectrum_energy(const std::vector<Amplitude>& spectrum);

} // namespace digitprimes

#endif // DIGITPRIMES_FOURIER_HPP
