#include "digitprimes/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

InequalityCheck make_check(std::string name) {
    InequalityCheck c;
    c.name = std::move(name);
    return c;
}

// min(x mod m, m - x mod m) for integers.
i128 int_dist(i128 x, i128 m) {
    i128 r = x % m;
    if (r < 0) r += m;
    return std::min(r, m - r);
}

void require_range(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

void note_violation(InequalityCheck& check, const std::string& where) {
    if (check.violations++ == 0) check.first_violation = where;
}

std::string theta_label(std::size_t g, std::size_t n) {
    return "theta=" + std::to_string(g) + "/" + std::to_string(n);
}

} // namespace

double delta_exponent(const Rational& alpha, Base b) {
    const i64 r = mod_floor((b - 1) * alpha.num(), alpha.den());
    const double dist = static_cast<double>(std::min(r, alpha.den() - r)) / static_cast<double>(alpha.den());
    const double b4 = std::pow(static_cast<double>(b), 4);
    return dist * dist / (4.0 * b4);
}

ExponentSet exponents_from_fit(Base b, double C_fit, const Rational& alpha, double c_b) {
    if (!(C_fit > 0.0)) throw PreconditionError("exponents_from_fit: C must be positive");
    const double lb = std::log(static_cast<double>(b));
    ExponentSet e;
    e.C_fit = C_fit;
    e.alpha_b = std::log(C_fit * b / (b - 1.0) * lb) / lb;
    e.beta_b = std::log(C_fit * lb) / lb;
    e.c_b = c_b;
    e.delta = delta_exponent(alpha, b);
    return e;
}

std::vector<Frequency> l1_theta_samples(Base b, int k, std::size_t count) {
    const i64 n = ipow(b, k);
    std::vector<Frequency> out;
    for (std::size_t j = 0; j < count; ++j) {
        out.push_back(Frequency::rational(static_cast<i64>(j), n * static_cast<i64>(count)));
    }
    return out;
}

L1Result verify_l1(const DigitConstraint& c, Base b, int k, const std::vector<Frequency>& thetas) {
    c.validate(b, k);
    checked_power(b, k, kOracleLimit, "verify_l1");
    require_range(thetas.size() >= 10, "verify_l1: need at least 10 theta samples");
    bool has_zero = false;
    for (const auto& t : thetas) has_zero = has_zero || t.value() == 0.0;
    require_range(has_zero, "verify_l1: theta samples must include theta = 0");

    L1Result r;
    r.k = k;
    r.thetas = thetas;
    for (const auto& theta : thetas) {
        long double s = 0.0L;
        for (const auto& z : shifted_spectrum(c, theta, b, k)) s += std::abs(z);
        r.lhs.push_back(static_cast<double>(s));
        r.lhs_max = std::max(r.lhs_max, static_cast<double>(s));
    }
    r.C_k = std::pow(r.lhs_max, 1.0 / k) / (b * std::log(static_cast<double>(b)));
    return r;
}

L1Sweep l1_sweep(const DigitConstraint& c, Base b, const std::vector<int>& ks, std::size_t theta_count) {
    if (ks.empty()) throw PreconditionError("l1_sweep: no k values");
    L1Sweep s;
    s.C_min = std::numeric_limits<double>::infinity();
    for (int k : ks) {
        s.per_k.push_back(verify_l1(c, b, k, l1_theta_samples(b, k, theta_count)));
        s.C_min = std::min(s.C_min, s.per_k.back().C_k);
        s.C_max = std::max(s.C_max, s.per_k.back().C_k);
    }
    return s;
}

LargeSieveResult verify_large_sieve(const DigitConstraint& c, Base b, int k, i64 D, const Frequency& theta,
                                    double C) {
    c.validate(b, k);
    const u64 n = checked_power(b, k, kOracleLimit, "verify_large_sieve");
    require_range(D >= 1, "verify_large_sieve: D must be >= 1");
    require_range(static_cast<double>(D) * static_cast<double>(D) <= 10.0 * static_cast<double>(n),
                  "verify_large_sieve: D^2 must be <= 10 b^k");

    const double radius = 1.0 / (10.0 * static_cast<double>(D) * static_cast<double>(D));
    const double step = 2.0 * radius / (kSupGridPoints - 1);

    LargeSieveResult r;
    r.D = D;
    long double grid_sum = 0.0L, corr_sum = 0.0L;
    for (i64 d = D; d < 2 * D; ++d) {
        for (i64 ell = 1; ell < d; ++ell) {
            if (gcd(ell, d) != 1) continue;
            const Frequency centre = Frequency::rational(ell, d) + theta;
            double fmax = 0.0, dmax = 0.0;
            // the even grid straddles eps = 0, where |F| peaks on rationals, so sample it too
            for (int j = -1; j < kSupGridPoints; ++j) {
                const Frequency point = j < 0 ? centre : centre.shifted(-radius + step * j);
                fmax = std::max(fmax, std::abs(fourier_eval(c, point, b, k)));
                dmax = std::max(dmax, std::abs(fourier_derivative_eval(c, point, b, k)));
            }
            grid_sum += fmax;
            corr_sum += std::min(0.5 * step * dmax, fmax);
            ++r.fractions;
        }
    }
    r.grid_part = static_cast<double>(grid_sum);
    r.correction_part = static_cast<double>(corr_sum);
    r.lhs = r.grid_part + r.correction_part;
    const double dd = static_cast<double>(D) * static_cast<double>(D);
    r.rhs = (dd + static_cast<double>(n)) * std::pow(C * std::log(static_cast<double>(b)), k);
    r.ratio = r.lhs / r.rhs;
    return r;
}

double hybrid_lhs(const std::vector<Amplitude>& spectrum, i64 D, double B, std::size_t* terms) {
    const auto n = static_cast<i64>(spectrum.size());
    long double s = 0.0L;
    std::size_t count = 0;
    for (i64 d = D; d < 2 * D; ++d) {
        const long double bd = static_cast<long double>(B) * d;
        for (i64 ell = 0; ell < d; ++ell) {
            if (gcd(ell, d) != 1) continue;
            // integers a with |a d - n ell| < B d
            const i128 centre = static_cast<i128>(n) * ell;
            const auto lo = static_cast<i64>(std::floor((static_cast<long double>(centre) - bd) / d));
            const auto hi = static_cast<i64>(std::ceil((static_cast<long double>(centre) + bd) / d));
            for (i64 a = lo; a <= hi; ++a) {
                const i128 diff = static_cast<i128>(a) * d - centre;
                if (std::abs(static_cast<long double>(diff)) >= bd) continue;
                s += std::abs(spectrum[static_cast<std::size_t>(mod_floor(a, n))]);
                ++count;
            }
        }
    }
    if (terms) *terms = count;
    return static_cast<double>(s);
}

HybridResult verify_hybrid(const DigitConstraint& c, Base b, int k, i64 D, double B, double C) {
    c.validate(b, k);
    const u64 n = checked_power(b, k, kOracleLimit, "verify_hybrid");
    require_range(D >= 1, "verify_hybrid: D must be >= 1");
    require_range(B >= 1.0, "verify_hybrid: B must be >= 1");

    const bool character = c.kind() == ConstraintKind::DigitSumResidue;
    const auto spectrum = full_spectrum(c, b, k);

    HybridResult r;
    r.D = D;
    r.B = B;
    r.exponents = exponents_from_fit(b, C, character ? c.alpha() : Rational{});
    r.lhs = hybrid_lhs(spectrum, D, B, &r.terms);
    const double lhs2 = hybrid_lhs(spectrum, D, 2 * B);
    r.realized_exponent = r.lhs > 0.0 ? std::log2(lhs2 / r.lhs) : 0.0;

    const double d2b = static_cast<double>(D) * static_cast<double>(D) * B;
    const double trivial = character ? static_cast<double>(n) : std::pow(b - 1.0, k);
    const double exponent = character ? r.exponents.beta_b : r.exponents.alpha_b;
    r.rhs_power = trivial * std::pow(d2b, exponent);
    r.rhs_linear = d2b * std::pow(C * std::log(static_cast<double>(b)), k);
    r.rhs = r.rhs_power + r.rhs_linear;
    r.dominant = r.rhs_power >= r.rhs_linear ? "power" : "linear";
    r.ratio = r.lhs / r.rhs;
    return r;
}

LinfRationalResult verify_linf_rational(const DigitConstraint& c, Base b, int k, i64 ell, i64 d, double eps) {
    if (c.kind() != ConstraintKind::MissingDigit) {
        throw PreconditionError("verify_linf_rational: needs a missing-digit constraint");
    }
    c.validate(b, k);
    require_range(d >= 1 && gcd(ell, d) == 1, "verify_linf_rational: hypothesis gcd(ell, d) = 1 fails");
    const long double bk = std::pow(static_cast<long double>(b.value()), k);
    require_range(static_cast<long double>(d) * d * d < bk, "verify_linf_rational: hypothesis d < b^(k/3) fails");
    bool coprime_factor = false;
    for (const auto& f : factorize(static_cast<u64>(d))) coprime_factor = coprime_factor || b % static_cast<i64>(f.p) != 0;
    require_range(coprime_factor, "verify_linf_rational: hypothesis 'd has a prime factor not dividing b' fails");
    require_range(2.0L * std::abs(eps) * std::pow(bk, 2.0L / 3.0L) < 1.0L,
                  "verify_linf_rational: hypothesis |eps| < 1/(2 b^(2k/3)) fails");

    LinfRationalResult r;
    r.ell = ell;
    r.d = d;
    r.eps = eps;
    r.value = std::abs(fourier_eval(c, Frequency{ell, d, eps}, b, k));
    r.trivial = std::pow(b - 1.0, k);
    r.c_empirical = r.value > 0.0 ? -std::log(r.value / r.trivial) * std::log(static_cast<double>(d)) / k
                                  : std::numeric_limits<double>::infinity();
    r.passed = r.c_empirical > 0.0;
    return r;
}

LinfCharacterResult verify_linf_character(Base b, int k, const Rational& alpha, std::size_t grid) {
    if (k < 1) throw PreconditionError("verify_linf_character: k must be >= 1");
    require_range(grid >= 1, "verify_linf_character: grid must be >= 1");
    LinfCharacterResult r;
    r.alpha = alpha;
    r.grid = grid;
    const double bk = std::pow(static_cast<double>(b), k);
    const i64 num = mod_floor((b - 1) * alpha.num(), alpha.den());
    const double dist = static_cast<double>(std::min(num, alpha.den() - num)) / static_cast<double>(alpha.den());
    r.bound = bk * std::exp(-k * dist * dist / (4.0 * std::pow(static_cast<double>(b), 3)));
    r.stated_bound = std::pow(bk, 1.0 - delta_exponent(alpha, b));
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (double shift : {0.0, phi}) {
        for (std::size_t g = 0; g < grid; ++g) {
            const Frequency theta{static_cast<i64>(g), static_cast<i64>(grid), shift / static_cast<double>(grid)};
            const double value = std::abs(character_eval(alpha, theta, b, k));
            ++r.checked;
            if (value > r.max_value) {
                r.max_value = value;
                r.argmax_theta = (static_cast<double>(g) + shift) / static_cast<double>(grid);
            }
            // relative slack for rounding in the product; the bound itself is exact
            if (value > r.bound * (1.0 + 1e-12)) {
                if (r.violations++ == 0) r.first_violation = (static_cast<double>(g) + shift) / static_cast<double>(grid);
            }
            if (value > r.stated_bound * (1.0 + 1e-12)) ++r.above_stated;
        }
    }
    return r;
}

bool SingleDigitReport::passed() const {
    for (const auto& c : asserted) {
        if (!c.passed()) return false;
    }
    return true;
}

SingleDigitReport single_digit_inequalities(Base b, std::size_t grid_size) {
    require_range(grid_size >= 1000, "single_digit_inequalities: grid size must be >= 1000");
    SingleDigitReport rep;
    rep.b = b;
    rep.grid_size = grid_size;
    const double tol = 4 * std::numeric_limits<double>::epsilon();
    const double bd = b;

    InequalityCheck pair = make_check("pair"), envelope = make_check("envelope");
    std::vector<InequalityCheck> digit_set;
    for (int a0 = 0; a0 < b; ++a0) digit_set.push_back(make_check("digit_set(a0=" + std::to_string(a0) + ")"));

    for (std::size_t g = 0; g < grid_size; ++g) {
        const double theta = static_cast<double>(g) / static_cast<double>(grid_size);
        const double t = nearest_int_distance(theta);
        const double t2 = t * t;

        ++pair.checked;
        const double lhs_pair = 2.0 + 2.0 * std::cos(2.0 * std::numbers::pi * theta);
        if (lhs_pair > 4.0 * std::exp(-2.0 * t2) + tol) note_violation(pair, theta_label(g, grid_size));

        const double rhs_env = (bd - 1.0) * std::exp(-t2 / bd);
        ++envelope.checked;
        if (bd - 3.0 + 2.0 * std::exp(-t2) > rhs_env * (1.0 + tol)) note_violation(envelope, theta_label(g, grid_size));

        const Amplitude all = geometric_sum(theta, b);
        for (int a0 = 0; a0 < b; ++a0) {
            auto& check = digit_set[static_cast<std::size_t>(a0)];
            ++check.checked;
            if (std::abs(all - unit(a0 * theta)) > rhs_env * (1.0 + 1e-12)) {
                note_violation(check, theta_label(g, grid_size));
            }
        }
    }

    InequalityCheck chaining = make_check("chaining");
    const auto G = static_cast<i128>(std::ceil(std::sqrt(static_cast<double>(grid_size))));
    const i128 A = (static_cast<i128>(grid_size) + G - 1) / G;
    const i128 L = G * A;
    const i128 bb = b.value();
    for (i128 j = 0; j < G; ++j) {
        for (i128 r = 0; r < A; ++r) {
            ++chaining.checked;
            // all terms scaled by b*G*A
            const i128 lhs = bb * (int_dist(j * A + r * G, L) + int_dist(bb * j * A + r * G, L));
            const i128 rhs = G * int_dist((bb - 1) * r, A);
            if (lhs < rhs) {
                note_violation(chaining, "theta=" + std::to_string(static_cast<i64>(j)) + "/" +
                                             std::to_string(static_cast<i64>(G)) +
                                             ", alpha=" + std::to_string(static_cast<i64>(r)) + "/" +
                                             std::to_string(static_cast<i64>(A)));
            }
        }
    }

    rep.asserted = {pair, envelope, chaining};
    rep.diagnostics = std::move(digit_set);
    return rep;
}

std::vector<ExponentTrendRow> exponent_trend(const std::vector<int>& bases, int k, std::size_t theta_count) {
    std::vector<ExponentTrendRow> out;
    for (int bv : bases) {
        const Base b{bv};
        auto l1 = verify_l1(DigitConstraint::missing_digit(0), b, k, l1_theta_samples(b, k, theta_count));
        auto e = exponents_from_fit(b, l1.C_k);
        out.push_back({bv, l1.C_k, e.alpha_b, e.beta_b});
    }
    return out;
}

} // namespace digitprimes
