#include "digitprimes/circle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

// Runs f(lo, hi) over contiguous blocks of [0, n) on up to `workers` threads.
template <typename F>
void for_blocks(u64 n, unsigned workers, F&& f) {
    if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
    if (workers <= 1 || n < 4096) {
        f(u64{0}, n);
        return;
    }
    const u64 per = (n + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (u64 lo = 0; lo < n; lo += per) {
        const u64 hi = std::min(n, lo + per);
        jobs.push_back(std::async(std::launch::async, [&f, lo, hi] { f(lo, hi); }));
    }
    for (auto& j : jobs) j.get();
}

void check_arc_params(u64 n, double threshold, i64 d0) {
    if (d0 < 1) throw PreconditionError("classify_arcs: d0 must be >= 1");
    if (static_cast<long double>(d0) * static_cast<long double>(d0) > static_cast<long double>(n)) {
        throw PreconditionError("classify_arcs: d0 = " + std::to_string(d0) + " exceeds b^(k/2)");
    }
    if (!(threshold >= 1.0)) throw PreconditionError("classify_arcs: threshold must be >= 1");
}

// max(d, n|beta|) < T with n beta = (a d - n ell)/d taken from integers.
bool major(u64 a, u64 n, const RationalApprox& r, double threshold) {
    if (static_cast<double>(r.d) >= threshold) return false;
    const i128 diff = static_cast<i128>(a) * r.d - static_cast<i128>(n) * r.ell;
    const long double eta = static_cast<long double>(diff < 0 ? -diff : diff) / static_cast<long double>(r.d);
    return eta < static_cast<long double>(threshold);
}

RationalApprox approx_of(u64 a, u64 n, i64 d0) {
    return dirichlet_approx(Frequency::rational(static_cast<i64>(a), static_cast<i64>(n)), d0);
}

long double abs_sum_product(const std::vector<Amplitude>& f, const std::vector<Amplitude>& lam,
                            const std::vector<u64>& indices) {
    long double s = 0.0L;
    for (u64 a : indices) s += static_cast<long double>(std::abs(f[a])) * std::abs(lam[a]);
    return s;
}

// Residues a mod n with |a d - n ell| in [lo d, hi d) for d ~ D and admissible ell.
std::vector<u64> minor_indices(u64 n, i64 D, double lo, double hi, bool closed_hi) {
    std::vector<u64> out;
    for (i64 d = D; d < 2 * D; ++d) {
        for (i64 ell = 0; ell < d; ++ell) {
            if (ell == 0 ? d != 1 : gcd(ell, d) != 1) continue;
            const i128 centre = static_cast<i128>(n) * ell;
            const long double span = static_cast<long double>(hi) * d;
            const auto first = static_cast<i64>(std::floor((static_cast<long double>(centre) - span) / d));
            const auto last = static_cast<i64>(std::ceil((static_cast<long double>(centre) + span) / d));
            for (i64 a = first; a <= last; ++a) {
                const i128 diff = static_cast<i128>(a) * d - centre;
                const long double eta = std::abs(static_cast<long double>(diff)) / d;
                if (eta < lo) continue;
                if (closed_hi ? eta > hi : eta >= hi) continue;
                out.push_back(static_cast<u64>(mod_floor(a, static_cast<i64>(n))));
            }
        }
    }
    return out;
}

} // namespace

std::string to_string(ArcLabel label) {
    return label == ArcLabel::Major ? "major" : "minor";
}

i64 default_d0(Base b, int k) {
    return ipow(b, k / 2);
}

ArcDecomposition classify_arcs(Base b, int k, double threshold, i64 d0, unsigned workers) {
    if (k < 1) throw PreconditionError("classify_arcs: k must be >= 1");
    const u64 n = checked_power(b, k, kArcTableLimit, "classify_arcs");
    check_arc_params(n, threshold, d0);

    ArcDecomposition out;
    out.b = b;
    out.k = k;
    out.d0 = d0;
    out.threshold = threshold;
    out.arcs.resize(n);
    for_blocks(n, workers, [&](u64 lo, u64 hi) {
        for (u64 a = lo; a < hi; ++a) {
            auto& e = out.arcs[a];
            e.approx = approx_of(a, n, d0);
            e.label = major(a, n, e.approx, threshold) ? ArcLabel::Major : ArcLabel::Minor;
        }
    });
    for (const auto& e : out.arcs) (e.label == ArcLabel::Major ? out.major_count : out.minor_count)++;
    return out;
}

ArcCounts count_arcs(Base b, int k, double threshold, i64 d0, unsigned workers) {
    if (k < 1) throw PreconditionError("count_arcs: k must be >= 1");
    const u64 n = checked_power(b, k, kSpectrumLimit, "count_arcs");
    check_arc_params(n, threshold, d0);

    std::vector<std::pair<u64, u64>> parts;
    std::mutex lock;
    for_blocks(n, workers, [&](u64 lo, u64 hi) {
        u64 m = 0;
        for (u64 a = lo; a < hi; ++a) m += major(a, n, approx_of(a, n, d0), threshold) ? 1 : 0;
        std::lock_guard guard(lock);
        parts.emplace_back(m, hi - lo);
    });
    ArcCounts c;
    for (auto [m, total] : parts) {
        c.major += m;
        c.minor += total - m;
    }
    return c;
}

void write_arcs_csv(std::ostream& os, const ArcDecomposition& arcs) {
    os << "a,label,ell,d,beta\n";
    os.precision(17);
    for (std::size_t a = 0; a < arcs.arcs.size(); ++a) {
        const auto& e = arcs.arcs[a];
        os << a << ',' << to_string(e.label) << ',' << e.approx.ell << ',' << e.approx.d << ',' << e.approx.beta << '\n';
    }
}

Rational kappa(Base b, int a0) {
    DigitConstraint::missing_digit(a0).validate(b, 1);
    const auto phi = static_cast<i64>(euler_phi_moebius(static_cast<u64>(b.value())).phi);
    if (gcd(a0, b) != 1) return {b, b - 1};
    return {b * (phi - 1), (b - 1) * phi};
}

double empirical_c_b(Base b, int k, int a0) {
    const auto c = DigitConstraint::missing_digit(a0);
    const long double bk = std::pow(static_cast<long double>(b.value()), k);
    double best = std::numeric_limits<double>::infinity();
    for (i64 d = 2; d < 64 && static_cast<long double>(d) * d * d < bk; ++d) {
        bool coprime_factor = false;
        for (const auto& f : factorize(static_cast<u64>(d))) coprime_factor = coprime_factor || b % static_cast<i64>(f.p) != 0;
        if (!coprime_factor) continue;
        for (i64 ell = 1; ell < d; ++ell) {
            if (gcd(ell, d) != 1) continue;
            best = std::min(best, verify_linf_rational(c, b, k, ell, d, 0.0).c_empirical);
        }
    }
    return std::isfinite(best) ? best : 0.0;
}

MainTermData major_arc_main_term(Base b, int k, int a0, double A) {
    const auto c = DigitConstraint::missing_digit(a0);
    c.validate(b, k);
    MainTermData out;
    out.kappa = kappa(b, a0);
    const double trivial = std::pow(b - 1.0, k);
    out.main_term = out.kappa.to_double() * trivial;
    try {
        out.main_exact = out.kappa * Rational{ipow(b - 1, k), 1};
    } catch (const ResourceError&) {
    }
    out.error_term = trivial / std::pow(k * std::log(static_cast<double>(b)), A);
    out.c_b = empirical_c_b(b, k, a0);

    const u64 n = static_cast<u64>(std::min<long double>(std::pow(static_cast<long double>(b.value()), k), 1e18L));
    if (n <= kOracleLimit) {
        std::vector<i64> per_residue(static_cast<std::size_t>(b.value()), 0);
        for (u64 m = 0; m < n; ++m) {
            if (c.holds(m, b, k)) ++per_residue[m % static_cast<u64>(b.value())];
        }
        i64 sum = 0;
        for (i64 a = 1; a < b; ++a) {
            if (gcd(a, b) == 1) sum += per_residue[static_cast<std::size_t>(a)];
        }
        const auto phi = static_cast<i64>(euler_phi_moebius(static_cast<u64>(b.value())).phi);
        out.ap_form = Rational{b * sum, phi};
    }
    return out;
}

InversionCheck inversion_identity_check(const DigitConstraint& c, Base b, int k, const PrimeTable& table) {
    c.validate(b, k);
    const u64 n = checked_power(b, k, kOracleLimit, "inversion_identity_check");
    if (n > table.limit()) throw PreconditionError("inversion_identity_check: b^k exceeds the prime table");

    InversionCheck out;
    out.lhs = count_constrained_primes(c, b, k, true, table);
    const auto f = indicator_spectrum(c, b, k);
    const auto lam = lambda_hat_spectrum(b, k, table);
    long double re = 0.0L, im = 0.0L;
    for (u64 a = 0; a < n; ++a) {
        const Amplitude z = f[a] * std::conj(lam[a]);
        re += z.real();
        im += z.imag();
    }
    out.rhs = static_cast<double>(re / n);
    out.imag_residual = static_cast<double>(im / n);
    out.rel_err = std::abs(out.lhs - out.rhs) / std::max(out.lhs, 1.0);
    return out;
}

CharacterDecomposition digit_sum_character_decomposition(Base b, int k, i64 m, i64 a, const PrimeTable& table) {
    const auto c = DigitConstraint::digit_sum_residue(m, a, 0);
    c.validate(b, k);
    const u64 n = checked_power(b, k, kOracleLimit, "digit_sum_character_decomposition");
    if (n > table.limit()) throw PreconditionError("digit_sum_character_decomposition: b^k exceeds the prime table");

    CharacterDecomposition out;
    out.main = table.psi_below(n) / static_cast<double>(m);
    if (m == 1) {
        out.total = out.main;
        return out;
    }
    const auto lam = lambda_hat_spectrum(b, k, table);
    long double re = 0.0L, im = 0.0L;
    for (i64 j = 1; j < m; ++j) {
        const auto g = full_spectrum(c.with_character(j), b, k);
        std::complex<long double> s{};
        for (u64 t = 0; t < n; ++t) {
            const Amplitude z = g[t] * std::conj(lam[t]);
            s += std::complex<long double>(z.real(), z.imag());
        }
        const Amplitude weight = unit(-static_cast<double>(mod_floor(a * j, m)) / static_cast<double>(m));
        const Amplitude term = weight * Amplitude(static_cast<double>(s.real() / (m * n)),
                                                  static_cast<double>(s.imag() / (m * n)));
        out.terms.push_back(term);
        re += term.real();
        im += term.imag();
    }
    out.total = out.main + static_cast<double>(re);
    out.imag_residual = static_cast<double>(im);
    return out;
}

MinorArcReport minor_arc_report(Base b, int k, i64 D, double B, i64 d0, int a0, const Rational& alpha, double C,
                                const PrimeTable& table) {
    const u64 n = checked_power(b, k, kOracleLimit, "minor_arc_report");
    if (n > table.limit()) throw PreconditionError("minor_arc_report: b^k exceeds the prime table");
    if (D < 1) throw PreconditionError("minor_arc_report: D must be >= 1");
    if (!(B > 0.0)) throw PreconditionError("minor_arc_report: B must be positive");
    if (d0 < 1) throw PreconditionError("minor_arc_report: d0 must be >= 1");
    const auto md = DigitConstraint::missing_digit(a0);
    const auto ch = DigitConstraint::digit_sum_residue(alpha.den(), 0, mod_floor(alpha.num(), alpha.den()));
    md.validate(b, k);
    ch.validate(b, k);

    MinorArcReport rep;
    rep.b = b;
    rep.k = k;
    rep.D = D;
    rep.B = B;
    rep.d0 = d0;
    rep.exponents = exponents_from_fit(b, C, alpha);
    const double nd = static_cast<double>(n);
    if (B < 1.0) rep.warnings.push_back("B < 1");
    if (B * static_cast<double>(d0) * static_cast<double>(D) > nd) rep.warnings.push_back("B > b^k/(d0 D)");
    if (D > d0) rep.warnings.push_back("D > d0");
    if (static_cast<double>(d0) * static_cast<double>(d0) > nd) rep.warnings.push_back("d0 > b^(k/2)");

    const auto f = full_spectrum(md, b, k);
    const auto g = full_spectrum(ch, b, k);
    const auto lam = lambda_hat_spectrum(b, k, table);
    const auto dyadic = minor_indices(n, D, B, 2 * B, false);
    const auto near = minor_indices(n, D, 0.0, 1.0, true);

    const double k4 = std::pow(static_cast<double>(k), 4);
    const double al = rep.exponents.alpha_b, be = rep.exponents.beta_b;
    const double dd = static_cast<double>(D), db = dd * B, sd0 = std::sqrt(static_cast<double>(d0));
    const double md_scale = std::pow(b - 1.0, k) * nd;
    const double ch_scale = nd * nd;

    auto row = [](std::string name, const std::vector<u64>& idx, long double lhs, double rhs) {
        MinorArcRow r;
        r.variant = std::move(name);
        r.terms = idx.size();
        r.lhs = static_cast<double>(lhs);
        r.rhs = rhs;
        r.ratio = r.lhs / rhs;
        return r;
    };
    rep.rows.push_back(row("missing_digit/eta~B", dyadic, abs_sum_product(f, lam, dyadic),
                           md_scale * (k4 / std::pow(db, 0.2 - al) + k4 * std::pow(nd, al) / sd0)));
    rep.rows.push_back(row("missing_digit/eta<<1", near, abs_sum_product(f, lam, near),
                           md_scale * (k4 / std::pow(dd, 0.2 - al) + k4 * std::pow(sd0, 1 + 4 * al) / std::sqrt(nd))));
    rep.rows.push_back(row("character/eta~B", dyadic, abs_sum_product(g, lam, dyadic),
                           ch_scale * (k4 / std::pow(db, 0.2 - be) + k4 * std::pow(nd, be) / sd0)));
    rep.rows.push_back(row("character/eta<<1", near, abs_sum_product(g, lam, near),
                           ch_scale * (k4 / std::pow(dd, 0.2 - be) + k4 * std::pow(sd0, 1 + 4 * be) / std::sqrt(nd))));
    return rep;
}

double fit_l1_constant(Base b, int a0) {
    std::vector<int> ks;
    for (int k = 1; k <= 40; ++k) {
        if (std::pow(static_cast<double>(b), k) > 1e6) break;
        ks.push_back(k);
    }
    if (ks.empty()) ks.push_back(1);
    if (ks.size() > 3) ks.erase(ks.begin(), ks.end() - 3);
    return l1_sweep(DigitConstraint::missing_digit(a0), b, ks, 16).C_max;
}

EstimateResult estimate_count(const DigitConstraint& c, Base b, int k, const EstimateConfig& config,
                              const PrimeTable* table) {
    if (c.kind() == ConstraintKind::PrescribedDigits) {
        throw UnsupportedEstimatorError("estimate_count: no estimator for prescribed digits; use count instead");
    }
    c.validate(b, k);

    EstimateResult r;
    r.constraint = c.describe();
    r.b = b;
    r.k = k;
    r.weighted = config.weighted;
    r.d0 = config.d0.value_or(default_d0(b, k));
    const bool missing = c.kind() == ConstraintKind::MissingDigit;
    r.C = config.C ? *config.C : fit_l1_constant(b, missing ? c.a0() : 0);
    r.exponents = exponents_from_fit(b, r.C, missing ? Rational{} : c.alpha());

    const long double n_ld = std::pow(static_cast<long double>(b.value()), k);
    const double n = static_cast<double>(n_ld);
    const double log_n = k * std::log(static_cast<double>(b));
    const double k4 = std::pow(static_cast<double>(k), 4), k5 = k4 * k;
    const double d0 = static_cast<double>(r.d0);
    const bool in_table = table && n_ld <= static_cast<long double>(table->limit());

    if (missing) {
        const double trivial = std::pow(b - 1.0, k);
        const double al = r.exponents.alpha_b;
        r.threshold = config.threshold.value_or(std::pow(log_n, config.A));
        r.prediction = kappa(b, c.a0()).to_double() * trivial;
        r.error_terms = {
            {"major_arc", trivial / std::pow(log_n, config.A)},
            {"minor_dyadic", trivial * k4 / std::pow(log_n, config.A * (0.2 - al))},
            {"minor_large_denominator", trivial * k5 * std::pow(n, al) / std::sqrt(d0)},
            {"minor_near", trivial * k5 * std::pow(d0, 0.5 + 2 * al) / std::sqrt(n)},
        };
    } else {
        const i64 m = c.modulus();
        double delta = 0.0;
        if (m > 1) {
            delta = std::numeric_limits<double>::infinity();
            for (i64 j = 1; j < m; ++j) delta = std::min(delta, delta_exponent(Rational{j, m}, b));
        }
        r.exponents.delta = delta;
        const double be = r.exponents.beta_b;
        r.threshold = config.threshold.value_or(std::max(1.0, std::pow(n, delta / 4)));
        r.prediction = (in_table ? table->psi_below(static_cast<u64>(n_ld)) : n) / static_cast<double>(m);
        if (m > 1) {
            r.error_terms = {
                {"major_arc", n / std::pow(n, delta / 4)},
                {"minor_dyadic", k4 * n / std::pow(n, delta * (0.2 - be) / 4)},
                {"minor_near", n * k4 * std::pow(d0, 0.5 + 2 * be) / std::sqrt(n)},
                {"minor_large_denominator", k4 * std::pow(n, 1 + be) / std::sqrt(d0)},
            };
        }
    }
    if (!config.weighted) {
        r.prediction /= log_n;
        for (auto& t : r.error_terms) t.value /= log_n;
    }
    for (const auto& t : r.error_terms) r.error_budget += t.value;

    if (config.count_arcs && n_ld <= static_cast<long double>(kSpectrumLimit)) {
        r.arcs = count_arcs(b, k, r.threshold, r.d0, config.workers);
    }
    if (in_table) {
        r.oracle = count_constrained_primes(c, b, k, config.weighted, *table);
        r.ratio = *r.oracle / r.prediction;
    }
    return r;
}

} // namespace digitprimes
