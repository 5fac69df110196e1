#ifndef DIGITPRIMES_RATIONAL_HPP
#define DIGITPRIMES_RATIONAL_HPP

#include <compare>
#include <string>
#include <string_view>

#include "digitprimes/arith.hpp"

namespace digitprimes {

// Exact reduced fraction with positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(i64 num, i64 den);

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    // Parses "p/q" or a bare integer "p"; never goes through floating point.
    static Rational parse(std::string_view text);

    friend bool operator==(const Rational&, const Rational&) = default;
    friend Rational operator*(const Rational& a, const Rational& b);

private:
    i64 num_ = 0;
    i64 den_ = 1;
};

// A point on R/Z held as num/den + offset. The rational part is kept exact
// (num reduced into [0, den)) so that integer multiples of it can be formed
// without phase drift; offset carries the small real displacement.
class Frequency {
public:
    Frequency() = default;
    Frequency(i64 num, i64 den, double offset = 0.0);

    static Frequency rational(i64 num, i64 den) { return {num, den, 0.0}; }
    static Frequency rational(const Rational& r) { return {r.num(), r.den(), 0.0}; }
    static Frequency real(double value) { return {0, 1, value}; }

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    double offset() const { return offset_; }
    bool is_exact() const { return offset_ == 0.0; }

    // Value reduced into [0, 1).
    double value() const;
    long double value_ld() const;

    // Fractional part of n*theta in [0, 1).
    double phase_of_multiple(i64 n) const;

    // factor*theta with the rational part reduced exactly mod 1.
    Frequency scaled(i64 factor) const;
    Frequency shifted(double eps) const { return {num_, den_, offset_ + eps}; }

    friend Frequency operator+(const Frequency& a, const Frequency& b);
    friend Frequency operator-(const Frequency& a);

private:
    i64 num_ = 0;
    i64 den_ = 1;
    double offset_ = 0.0;
};

// alpha = ell/d + beta with gcd(ell, d) = 1, 1 <= d <= d0 and |beta| < 1/(d*d0).
struct RationalApprox {
    i64 ell = 0;
    i64 d = 1;
    double beta = 0.0;
    i64 d0 = 1;

    double value() const { return static_cast<double>(ell) / static_cast<double>(d) + beta; }
};

// Dirichlet approximation via continued-fraction convergents: returns the
// last convergent with denominator <= d0. That convergent minimizes
// ||d*alpha|| over 1 <= d <= d0 (smallest d on ties) and always satisfies the
// Dirichlet inequality.
RationalApprox dirichlet_approx(const Frequency& alpha, i64 d0);

} // namespace digitprimes

#endif // DIGITPRIMES_RATIONAL_HPP
