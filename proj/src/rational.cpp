#include "digitprimes/rational.hpp"

#include <charconv>
#include <cmath>

#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

i64 parse_int(std::string_view s, std::string_view whole) {
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw PreconditionError("cannot parse rational '" + std::string(whole) + "'");
    }
    return v;
}

double centered(double x) {
    return x - std::nearbyint(x);
}

} // namespace

Rational::Rational(i64 num, i64 den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i64 g = gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return {parse_int(text, text), 1};
    return {parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text)};
}

Rational operator*(const Rational& a, const Rational& b) {
    i128 n = static_cast<i128>(a.num_) * b.num_;
    i128 d = static_cast<i128>(a.den_) * b.den_;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
        i64 g1 = gcd(a.num_, b.den_);
        i64 g2 = gcd(b.num_, a.den_);
        n = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
        d = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) {
            throw ResourceError("rational product overflows 64 bits");
        }
    }
    return {static_cast<i64>(n), static_cast<i64>(d)};
}

Frequency::Frequency(i64 num, i64 den, double offset) : den_(den) {
    if (den <= 0) throw PreconditionError("frequency denominator must be positive");
    if (!std::isfinite(offset)) throw PreconditionError("frequency offset must be finite");
    num_ = mod_floor(num, den);
    offset_ = centered(offset);
}

double Frequency::value() const {
    return frac(static_cast<double>(num_) / static_cast<double>(den_) + offset_);
}

long double Frequency::value_ld() const {
    long double v = static_cast<long double>(num_) / static_cast<long double>(den_) + offset_;
    v -= std::floor(v);
    return v >= 1.0L ? 0.0L : v;
}

double Frequency::phase_of_multiple(i64 n) const {
    i128 r = static_cast<i128>(mod_floor(n, den_)) * num_ % den_;
    long double v = static_cast<long double>(static_cast<i64>(r)) / static_cast<long double>(den_);
    if (offset_ != 0.0) {
        long double o = static_cast<long double>(n) * offset_;
        v += o - std::floor(o);
    }
    v -= std::floor(v);
    double out = static_cast<double>(v);
    return out >= 1.0 ? 0.0 : out;
}

Frequency Frequency::scaled(i64 factor) const {
    i128 r = static_cast<i128>(mod_floor(factor, den_)) * num_ % den_;
    long double o = static_cast<long double>(factor) * offset_;
    o -= std::nearbyint(o);
    return {static_cast<i64>(r), den_, static_cast<double>(o)};
}

Frequency operator+(const Frequency& a, const Frequency& b) {
    i64 g = gcd(a.den_, b.den_);
    i128 den = static_cast<i128>(a.den_ / g) * b.den_;
    if (den > INT64_MAX) throw ResourceError("frequency sum denominator overflows 64 bits");
    i128 num = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
    num %= den;
    return {static_cast<i64>(num), static_cast<i64>(den), a.offset_ + b.offset_};
}

Frequency operator-(const Frequency& a) {
    return {-a.num_, a.den_, -a.offset_};
}

RationalApprox dirichlet_approx(const Frequency& alpha, i64 d0) {
    if (d0 < 1) throw PreconditionError("dirichlet_approx: d0 must be >= 1");

    // Convergents p/q of alpha in [0, 1); (p1, q1) is the latest accepted.
    i64 p2 = 1, q2 = 0;
    i64 p1 = 0, q1 = 1;
    RationalApprox out{0, 1, 0.0, d0};

    if (alpha.is_exact()) {
        i64 num = alpha.num();
        i64 den = alpha.den();
        // alpha = num/den in [0,1): first partial quotient is 0, so start from 0/1.
        i64 rn = den, rd = num;
        while (rd != 0) {
            i64 a = rn / rd;
            i64 r = rn % rd;
            i128 p = static_cast<i128>(a) * p1 + p2;
            i128 q = static_cast<i128>(a) * q1 + q2;
            if (q > d0) break;
            p2 = p1;
            q2 = q1;
            p1 = static_cast<i64>(p);
            q1 = static_cast<i64>(q);
            rn = rd;
            rd = r;
        }
        i128 diff = static_cast<i128>(num) * q1 - static_cast<i128>(p1) * den;
        out.ell = p1;
        out.d = q1;
        out.beta = static_cast<double>(static_cast<long double>(diff) /
                                       (static_cast<long double>(den) * q1));
        return out;
    }

    // Partial quotients from the convergent errors e = q*x - p, recomputed
    // from x at every step instead of iterating a floating remainder.
    long double x = alpha.value_ld();
    long double e2 = -1.0L;
    long double e1 = x;
    while (e1 != 0.0L) {
        long double ratio = std::abs(e2) / std::abs(e1);
        if (ratio > static_cast<long double>(d0) + 1.0L) {
            // q = a*q1 + q2 >= a > d0 regardless of rounding in a.
            break;
        }
        auto a = static_cast<i64>(std::floor(ratio));
        i128 p = static_cast<i128>(a) * p1 + p2;
        i128 q = static_cast<i128>(a) * q1 + q2;
        if (q > d0) break;
        p2 = p1;
        q2 = q1;
        p1 = static_cast<i64>(p);
        q1 = static_cast<i64>(q);
        e2 = e1;
        e1 = static_cast<long double>(q1) * x - static_cast<long double>(p1);
    }
    out.ell = p1;
    out.d = q1;
    out.beta = static_cast<double>(x - static_cast<long double>(p1) / static_cast<long double>(q1));
    return out;
}

} // namespace digitprimes
