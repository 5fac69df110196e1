#include "digitprimes/fourier.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

enum class LevelType { All, AllBut, Single };

struct Level {
    LevelType type;
    int digit;
};

std::vector<Level> levels_for(const DigitConstraint& c, int k) {
    std::vector<Level> out(static_cast<std::size_t>(k), Level{LevelType::All, 0});
    switch (c.kind()) {
    case ConstraintKind::MissingDigit:
        for (auto& l : out) l = {LevelType::AllBut, c.a0()};
        break;
    case ConstraintKind::DigitSumResidue:
        break;
    case ConstraintKind::PrescribedDigits:
        for (const auto& [pos, dig] : c.digits()) out[static_cast<std::size_t>(pos)] = {LevelType::Single, dig};
        break;
    }
    return out;
}

Frequency level_shift(const DigitConstraint& c) {
    if (c.kind() == ConstraintKind::DigitSumResidue) return Frequency::rational(c.character_index(), c.modulus());
    return {};
}

double centered(double t) {
    return t - std::nearbyint(t);
}

Amplitude level_factor(const Level& l, double x, int b) {
    switch (l.type) {
    case LevelType::All: return geometric_sum(x, b);
    case LevelType::AllBut: return geometric_sum(x, b) - unit(l.digit * x);
    case LevelType::Single: return unit(l.digit * x);
    }
    return {};
}

// sum_{n in digits} n e(n x)
Amplitude level_derivative_factor(const Level& l, double x, int b) {
    switch (l.type) {
    case LevelType::Single: return static_cast<double>(l.digit) * unit(l.digit * x);
    case LevelType::All:
    case LevelType::AllBut: {
        Amplitude s{};
        for (int n = 1; n < b; ++n) {
            if (l.type == LevelType::AllBut && n == l.digit) continue;
            s += static_cast<double>(n) * unit(n * x);
        }
        return s;
    }
    }
    return {};
}

// Phase b^i theta + shift for every level, centered into [-1/2, 1/2].
std::vector<double> level_phases(const Frequency& theta, const Frequency& shift, int b, int k) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k));
    Frequency scaled = theta;
    for (int i = 0; i < k; ++i) {
        out.push_back(centered((scaled + shift).value()));
        scaled = scaled.scaled(b);
    }
    return out;
}

Amplitude product_of(const std::vector<Level>& levels, const std::vector<double>& phases, int b) {
    Amplitude prod{1.0, 0.0};
    for (std::size_t i = 0; i < levels.size(); ++i) prod *= level_factor(levels[i], phases[i], b);
    if (!std::isfinite(prod.real()) || !std::isfinite(prod.imag())) {
        throw ComputationError("non-finite value in digit product");
    }
    return prod;
}

} // namespace

Amplitude unit(double t) {
    double x = centered(t) * kTwoPi;
    return {std::cos(x), std::sin(x)};
}

Amplitude geometric_sum(double x, int b) {
    x = centered(x);
    if (std::abs(x) < kSingularThreshold) {
        Amplitude s{};
        for (int n = 0; n < b; ++n) s += unit(n * x);
        return s;
    }
    const double pi = std::numbers::pi;
    double ratio = std::sin(pi * b * x) / std::sin(pi * x);
    return ratio * unit(0.5 * (b - 1) * x);
}

Amplitude fourier_eval(const DigitConstraint& c, const Frequency& theta, Base b, int k) {
    c.validate(b, k);
    return product_of(levels_for(c, k), level_phases(theta, level_shift(c), b, k), b);
}

Amplitude character_eval(const Rational& alpha, const Frequency& theta, Base b, int k) {
    if (k < 1) throw PreconditionError("character_eval: k must be >= 1");
    std::vector<Level> levels(static_cast<std::size_t>(k), Level{LevelType::All, 0});
    return product_of(levels, level_phases(theta, Frequency::rational(alpha), b, k), b);
}

std::vector<double> factor_moduli(const DigitConstraint& c, const Frequency& theta, Base b, int k) {
    c.validate(b, k);
    auto levels = levels_for(c, k);
    auto phases = level_phases(theta, level_shift(c), b, k);
    std::vector<double> out;
    for (std::size_t i = 0; i < levels.size(); ++i) out.push_back(std::abs(level_factor(levels[i], phases[i], b)));
    return out;
}

Amplitude naive_fourier_oracle(const DigitConstraint& c, const Frequency& theta, Base b, int k) {
    c.validate(b, k);
    const u64 n_max = checked_power(b, k, kOracleLimit, "naive_fourier_oracle");
    long double re = 0.0L, im = 0.0L;
    const bool character = c.kind() == ConstraintKind::DigitSumResidue;
    for (u64 n = 0; n < n_max; ++n) {
        double phase = theta.phase_of_multiple(static_cast<i64>(n));
        if (character) {
            auto s = static_cast<i64>(digit_sum(n, b));
            phase += static_cast<double>(mod_floor(c.character_index() * s, c.modulus())) /
                     static_cast<double>(c.modulus());
        } else if (!c.holds(n, b, k)) {
            continue;
        }
        Amplitude z = unit(phase);
        re += z.real();
        im += z.imag();
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

Amplitude fourier_derivative_eval(const DigitConstraint& c, const Frequency& theta, Base b, int k) {
    c.validate(b, k);
    auto levels = levels_for(c, k);
    auto phases = level_phases(theta, level_shift(c), b, k);
    const auto n = levels.size();

    std::vector<Amplitude> f(n), df(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = level_factor(levels[i], phases[i], b);
        df[i] = level_derivative_factor(levels[i], phases[i], b);
    }
    // prefix[i] = prod_{j<i} f_j, suffix[i] = prod_{j>=i} f_j
    std::vector<Amplitude> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * f[i];
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * f[i];

    Amplitude sum{};
    double scale = 1.0;  // b^j
    for (std::size_t j = 0; j < n; ++j) {
        sum += scale * df[j] * prefix[j] * suffix[j + 1];
        scale *= b;
    }
    Amplitude out = Amplitude{0.0, kTwoPi} * sum;
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
        throw ComputationError("non-finite value in digit product derivative");
    }
    return out;
}

std::vector<Amplitude> shifted_spectrum(const DigitConstraint& c, const Frequency& theta, Base b, int k) {
    c.validate(b, k);
    const u64 n_total = checked_power(b, k, kSpectrumLimit, "full_spectrum");
    const auto levels = levels_for(c, k);
    const Frequency shift = level_shift(c);

    // s[i] = b^i theta + shift
    std::vector<Frequency> s;
    Frequency scaled = theta;
    for (int i = 0; i < k; ++i) {
        s.push_back(scaled + shift);
        scaled = scaled.scaled(b);
    }

    std::vector<Amplitude> out(n_total, Amplitude{1.0, 0.0});
    u64 lower = 1;  // b^(j-1)
    for (int j = 1; j <= k; ++j) {
        const u64 size = lower * static_cast<u64>(b.value());
        const auto i = static_cast<std::size_t>(k - j);
        const Frequency& si = s[i];
        const auto modulus = static_cast<i128>(size) * si.den();
        // Descending so that out[a mod lower] is still the level j-1 value.
        for (u64 a = size; a-- > 0;) {
            double t = 0.0;
            if (si.is_exact()) {
                i128 num = (static_cast<i128>(a) * si.den() + static_cast<i128>(si.num()) * size) % modulus;
                t = static_cast<double>(static_cast<long double>(num) / static_cast<long double>(modulus));
            } else {
                t = static_cast<double>(a) / static_cast<double>(size) + si.value();
            }
            out[a] = level_factor(levels[i], centered(t), b) * out[a % lower];
        }
        lower = size;
    }
    for (const auto& z : out) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ComputationError("non-finite value in digit spectrum");
        }
    }
    return out;
}

std::vector<Amplitude> indicator_spectrum(const DigitConstraint& c, Base b, int k) {
    if (c.kind() != ConstraintKind::DigitSumResidue) return full_spectrum(c, b, k);
    c.validate(b, k);
    const i64 m = c.modulus();
    const u64 n_total = checked_power(b, k, kSpectrumLimit, "indicator_spectrum");
    std::vector<Amplitude> out(n_total, Amplitude{});
    for (i64 j = 0; j < m; ++j) {
        const Amplitude weight =
            unit(-static_cast<double>(mod_floor(c.residue() * j, m)) / static_cast<double>(m)) / static_cast<double>(m);
        auto spec = full_spectrum(c.with_character(j), b, k);
        for (u64 a = 0; a < n_total; ++a) out[a] += weight * spec[a];
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const std::vector<Amplitude>& spectrum) {
    os << "a,re,im,modulus\n";
    os.precision(17);
    for (std::size_t a = 0; a < spectrum.size(); ++a) {
        const auto& z = spectrum[a];
        os << a << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
    }
}

double spectrum_energy(const std::vector<Amplitude>& spectrum) {
    long double s = 0.0L;
    for (const auto& z : spectrum) s += std::norm(z);
    return static_cast<double>(s);
}

} // namespace digitprimes
