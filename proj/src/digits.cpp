#include "digitprimes/digits.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "digitprimes/error.hpp"

namespace digitprimes {

Base::Base(int b) : b_(b) {
    if (b < 2) throw PreconditionError("base must be >= 2, got " + std::to_string(b));
}

u64 digit_sum(u64 n, Base b) {
    const auto base = static_cast<u64>(b.value());
    u64 s = 0;
    while (n > 0) {
        s += n % base;
        n /= base;
    }
    return s;
}

std::string to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::MissingDigit: return "missing_digit";
    case ConstraintKind::DigitSumResidue: return "digit_sum_residue";
    case ConstraintKind::PrescribedDigits: return "prescribed_digits";
    }
    return "unknown";
}

DigitConstraint DigitConstraint::missing_digit(int a0) {
    DigitConstraint c;
    c.kind_ = ConstraintKind::MissingDigit;
    c.a0_ = a0;
    return c;
}

DigitConstraint DigitConstraint::digit_sum_residue(i64 m, i64 a, i64 j) {
    if (m < 1) throw ConstraintError("digit-sum modulus must be positive");
    if (a < 0 || a >= m) throw ConstraintError("digit-sum residue must lie in [0, m)");
    if (j < 0 || j >= m) throw ConstraintError("character index j must lie in [0, m)");
    DigitConstraint c;
    c.kind_ = ConstraintKind::DigitSumResidue;
    c.m_ = m;
    c.a_ = a;
    c.j_ = j;
    return c;
}

DigitConstraint DigitConstraint::prescribed(std::vector<PrescribedDigit> digits) {
    std::sort(digits.begin(), digits.end(),
              [](const PrescribedDigit& x, const PrescribedDigit& y) { return x.position < y.position; });
    for (std::size_t i = 1; i < digits.size(); ++i) {
        if (digits[i].position == digits[i - 1].position) {
            throw ConstraintError("digit position " + std::to_string(digits[i].position) + " prescribed twice");
        }
    }
    DigitConstraint c;
    c.kind_ = ConstraintKind::PrescribedDigits;
    c.digits_ = std::move(digits);
    return c;
}

DigitConstraint DigitConstraint::with_character(i64 j) const {
    if (kind_ != ConstraintKind::DigitSumResidue) throw ConstraintError("with_character needs a digit-sum constraint");
    return digit_sum_residue(m_, a_, j);
}

void DigitConstraint::validate(Base b, int k) const {
    if (k < 1) throw ConstraintError("digit count k must be >= 1");
    switch (kind_) {
    case ConstraintKind::MissingDigit:
        if (a0_ < 0 || a0_ >= b) {
            throw ConstraintError("missing digit a0=" + std::to_string(a0_) + " is not a base-" +
                                  std::to_string(b.value()) + " digit");
        }
        break;
    case ConstraintKind::DigitSumResidue:
        if (gcd(m_, b - 1) != 1) {
            throw ConstraintError("digit-sum modulus m=" + std::to_string(m_) + " must be coprime to b-1=" +
                                  std::to_string(b - 1));
        }
        break;
    case ConstraintKind::PrescribedDigits:
        for (const auto& [pos, dig] : digits_) {
            if (pos < 0 || pos >= k) {
                throw ConstraintError("prescribed position " + std::to_string(pos) + " outside [0, k)");
            }
            if (dig < 0 || dig >= b) {
                throw ConstraintError("prescribed digit " + std::to_string(dig) + " is not a base-" +
                                      std::to_string(b.value()) + " digit");
            }
        }
        break;
    }
}

bool DigitConstraint::holds(u64 n, Base b, int k) const {
    const auto base = static_cast<u64>(b.value());
    switch (kind_) {
    case ConstraintKind::MissingDigit:
        for (int i = 0; i < k; ++i) {
            if (n % base == static_cast<u64>(a0_)) return false;
            n /= base;
        }
        return true;
    case ConstraintKind::DigitSumResidue:
        return static_cast<i64>(digit_sum(n, b) % static_cast<u64>(m_)) == a_;
    case ConstraintKind::PrescribedDigits: {
        int pos = 0;
        for (const auto& [p, dig] : digits_) {
            for (; pos < p; ++pos) n /= base;
            if (n % base != static_cast<u64>(dig)) return false;
        }
        return true;
    }
    }
    return false;
}

double DigitConstraint::support_size(Base b, int k) const {
    switch (kind_) {
    case ConstraintKind::MissingDigit: return std::pow(b - 1.0, k);
    case ConstraintKind::DigitSumResidue: return std::pow(static_cast<double>(b), k) / static_cast<double>(m_);
    case ConstraintKind::PrescribedDigits:
        return std::pow(static_cast<double>(b), k - static_cast<int>(digits_.size()));
    }
    return 0.0;
}

std::string DigitConstraint::describe() const {
    switch (kind_) {
    case ConstraintKind::MissingDigit: return "missing_digit(a0=" + std::to_string(a0_) + ")";
    case ConstraintKind::DigitSumResidue:
        return "digit_sum_residue(m=" + std::to_string(m_) + ",a=" + std::to_string(a_) +
               ",alpha=" + std::to_string(j_) + "/" + std::to_string(m_) + ")";
    case ConstraintKind::PrescribedDigits: {
        std::string s = "prescribed_digits(";
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(digits_[i].position) + ":" + std::to_string(digits_[i].digit);
        }
        return s + ")";
    }
    }
    return "unknown";
}

} // namespace digitprimes
