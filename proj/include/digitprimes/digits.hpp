#ifndef DIGITPRIMES_DIGITS_HPP
#define DIGITPRIMES_DIGITS_HPP

#include <string>
#include <vector>

#include "digitprimes/arith.hpp"
#include "digitprimes/rational.hpp"

namespace digitprimes {

class Base {
public:
    explicit Base(int b);
    int value() const { return b_; }
    operator int() const { return b_; }  // NOLINT(google-explicit-constructor)

private:
    int b_;
};

u64 digit_sum(u64 n, Base b);

enum class ConstraintKind { MissingDigit, DigitSumResidue, PrescribedDigits };

std::string to_string(ConstraintKind kind);

// Digit at position `position` (coefficient of b^position) must equal `digit`.
struct PrescribedDigit {
    int position;
    int digit;

    friend bool operator==(const PrescribedDigit&, const PrescribedDigit&) = default;
};

// Which digit condition a computation targets. Integers below b^k are read as
// k-digit strings with leading zeros, so MissingDigit with a0 = 0 excludes
// every n < b^(k-1).
//
// DigitSumResidue carries both the residue class (m, a), used by counting and
// indicator transforms, and a character frequency alpha = j/m, used by the
// character transform g(n) = e(alpha * s_b(n)).
class DigitConstraint {
public:
    static DigitConstraint missing_digit(int a0);
    static DigitConstraint digit_sum_residue(i64 m, i64 a, i64 j = 1);
    static DigitConstraint prescribed(std::vector<PrescribedDigit> digits);
    static DigitConstraint always_true() { return prescribed({}); }

    ConstraintKind kind() const { return kind_; }
    int a0() const { return a0_; }
    i64 modulus() const { return m_; }
    i64 residue() const { return a_; }
    i64 character_index() const { return j_; }
    Rational alpha() const { return {j_, m_}; }
    const std::vector<PrescribedDigit>& digits() const { return digits_; }

    DigitConstraint with_character(i64 j) const;

    // Throws ConstraintError when the constraint is not valid for (b, k).
    void validate(Base b, int k) const;

    // Indicator of the constraint for n < b^k.
    bool holds(u64 n, Base b, int k) const;

    // #{n < b^k : holds(n)}, closed form.
    double support_size(Base b, int k) const;

    std::string describe() const;

private:
    ConstraintKind kind_ = ConstraintKind::PrescribedDigits;
    int a0_ = 0;
    i64 m_ = 1;
    i64 a_ = 0;
    i64 j_ = 0;
    std::vector<PrescribedDigit> digits_;
};

} // namespace digitprimes

#endif // DIGITPRIMES_DIGITS_HPP
