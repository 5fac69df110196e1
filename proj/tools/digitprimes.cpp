// digitprimes: counts, estimates, transforms and bound checks for primes with
// restricted base-b digits.
//
// Exit status: 0 success, 2 a verified inequality failed, 1 usage or
// resource error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"
#include "digitprimes/report.hpp"

using namespace digitprimes;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

// Largest b^k the CLI sieves for an oracle or spectrum.
constexpr u64 kCliSieveLimit = 100'000'000;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    int b = 10;
    int k = 1;
    std::optional<int> missing_digit;
    std::optional<i64> modulus;
    i64 residue = 0;
    std::optional<std::string> prescribed;
    bool all_digits = false;
    bool weighted = false;
    bool unweighted = false;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string output;
    std::string format = "json";
    bool dry_run = false;

    // command-specific
    std::string theta = "0";
    i64 character = 1;
    double offset = 0.0;
    std::string alpha = "1/2";
    std::string ks = "2,3,4,5";
    std::size_t theta_count = 16;
    i64 D = 2;
    double B = 10.0;
    std::optional<i64> d0;
    std::optional<double> threshold;
    std::optional<double> C;
    double A = 8.0;
    i64 ell = 1;
    i64 d = 3;
    double eps = 0.0;
    std::size_t grid = 10000;
    std::string lemma = "prime-sum";
    std::size_t size = 100;
    u64 max_scale = 1'000'000;
    bool no_oracle = false;
};

struct Outcome {
    Json body;
    bool passed = true;
    std::string summary;                              // stdout line when a file is written
    std::function<void(std::ostream&)> csv;           // set when --format csv is supported
    bool plain_stdout = false;                        // print summary instead of JSON to stdout
};

Rational parse_rational(const std::string& text, const char* field) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string(field) + ": " + e.what());
    }
}

Frequency parse_theta(const Options& o) {
    const Rational r = parse_rational(o.theta, "--theta");
    return Frequency{r.num(), r.den(), o.offset};
}

std::vector<int> parse_int_list(const std::string& text, const char* field) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(field) + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw UsageError(std::string(field) + ": empty list");
    return out;
}

std::vector<PrescribedDigit> parse_prescribed(const std::string& text) {
    std::vector<PrescribedDigit> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("--prescribed: expected position:digit, got '" + item + "'");
        try {
            out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
        } catch (const std::exception&) {
            throw UsageError("--prescribed: expected position:digit, got '" + item + "'");
        }
    }
    return out;
}

// j is the character index; it only affects transforms, not the indicator.
DigitConstraint constraint_of(const Options& o, i64 j = 0) {
    const int given = (o.missing_digit ? 1 : 0) + (o.modulus ? 1 : 0) + (o.prescribed ? 1 : 0) + (o.all_digits ? 1 : 0);
    if (given == 0) throw UsageError("a constraint is required: --missing-digit, --modulus/--residue, --prescribed or --all");
    if (given > 1) throw UsageError("give exactly one of --missing-digit, --modulus, --prescribed, --all");
    if (o.missing_digit) return DigitConstraint::missing_digit(*o.missing_digit);
    if (o.modulus) return DigitConstraint::digit_sum_residue(*o.modulus, o.residue, j);
    if (o.all_digits) return DigitConstraint::prescribed({});
    return DigitConstraint::prescribed(parse_prescribed(*o.prescribed));
}

Json constraint_json(const DigitConstraint& c) {
    Json j = {{"kind", to_string(c.kind())}, {"description", c.describe()}};
    return j;
}

bool weighted_of(const Options& o) {
    if (o.weighted && o.unweighted) throw UsageError("--weighted and --unweighted are exclusive");
    return o.weighted;
}

u64 power_or_usage(const Options& o, u64 bound, const char* what) {
    try {
        return checked_power(Base{o.b}, o.k, bound, what);
    } catch (const ResourceError& e) {
        throw UsageError(std::string("--k: ") + e.what());
    }
}

std::filesystem::path cache_dir() {
    const char* env = std::getenv("DIGITPRIMES_CACHE");
    return env ? std::filesystem::path(env) : std::filesystem::path{};
}

PrimeTable table_for(u64 limit, const Options& o) {
    return load_or_sieve(std::max<u64>(limit, 2), cache_dir(), o.workers);
}

Json base_params(const Options& o) {
    return {{"b", o.b}, {"k", o.k}};
}

// ---- commands ---------------------------------------------------------------

Outcome run_count(const Options& o, Json& timings) {
    const auto c = constraint_of(o);
    const bool weighted = o.weighted;
    c.validate(Base{o.b}, o.k);
    const u64 n = power_or_usage(o, kMaxSieveLimit, "count");
    Outcome out;
    out.body = {{"params", base_params(o)}, {"constraint", constraint_json(c)}, {"weighted", weighted}};
    out.body["params"]["limit"] = n;
    if (o.dry_run) return out;
    Stopwatch sw;
    const auto table = table_for(n, o);
    timings["sieve_s"] = sw.seconds();
    const double count = count_constrained_primes(c, Base{o.b}, o.k, weighted, table);
    out.body["count"] = count;
    char buf[64];
    std::snprintf(buf, sizeof buf, weighted ? "%.17g" : "%.0f", count);
    out.summary = buf;
    out.plain_stdout = true;
    return out;
}

Outcome run_estimate(const Options& o, Json& timings) {
    const auto c = constraint_of(o);
    c.validate(Base{o.b}, o.k);
    EstimateConfig cfg;
    cfg.weighted = !o.unweighted;
    if (o.weighted && o.unweighted) throw UsageError("--weighted and --unweighted are exclusive");
    cfg.A = o.A;
    cfg.threshold = o.threshold;
    cfg.d0 = o.d0;
    cfg.C = o.C;
    cfg.workers = o.workers;
    const long double n = std::pow(static_cast<long double>(o.b), o.k);
    const bool oracle = !o.no_oracle && n <= static_cast<long double>(kCliSieveLimit);

    Outcome out;
    out.body = {{"params",
                 {{"b", o.b}, {"k", o.k}, {"weighted", cfg.weighted}, {"A", o.A},
                  {"threshold", o.threshold ? Json(*o.threshold) : Json("default")},
                  {"d0", o.d0 ? Json(*o.d0) : Json("b^floor(k/2)")}, {"C", o.C ? Json(*o.C) : Json("fitted")},
                  {"oracle", oracle}}},
                {"constraint_kind", to_string(c.kind())}};
    if (c.kind() == ConstraintKind::PrescribedDigits) {
        throw UnsupportedEstimatorError("estimate: no estimator for prescribed digits; use the count command");
    }
    if (o.dry_run) return out;

    std::optional<PrimeTable> table;
    if (oracle) {
        Stopwatch sw;
        table = table_for(static_cast<u64>(n), o);
        timings["sieve_s"] = sw.seconds();
    }
    Stopwatch sw;
    const auto r = estimate_count(c, Base{o.b}, o.k, cfg, table ? &*table : nullptr);
    timings["estimate_s"] = sw.seconds();
    const Json rj = to_json(r);
    for (auto& [key, value] : rj.items()) out.body[key] = value;
    char buf[160];
    std::snprintf(buf, sizeof buf, "prediction %.10g  oracle %s  ratio %s", r.prediction,
                  r.oracle ? std::to_string(*r.oracle).c_str() : "-", r.ratio ? std::to_string(*r.ratio).c_str() : "-");
    out.summary = buf;
    return out;
}

Outcome run_fourier(const Options& o, Json&) {
    const auto c = constraint_of(o, o.character);
    c.validate(Base{o.b}, o.k);
    const auto theta = parse_theta(o);
    Outcome out;
    out.body = {{"params", base_params(o)}, {"constraint", constraint_json(c)}, {"theta", to_json(theta)}};
    if (o.dry_run) return out;
    const auto v = fourier_eval(c, theta, Base{o.b}, o.k);
    const auto dv = fourier_derivative_eval(c, theta, Base{o.b}, o.k);
    out.body["value"] = {v.real(), v.imag()};
    out.body["modulus"] = std::abs(v);
    out.body["derivative"] = {dv.real(), dv.imag()};
    out.body["support_size"] = c.support_size(Base{o.b}, o.k);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %+.17gi", v.real(), v.imag());
    out.summary = buf;
    return out;
}

Outcome run_spectrum(const Options& o, Json& timings) {
    const auto c = constraint_of(o, o.character);
    c.validate(Base{o.b}, o.k);
    const auto theta = parse_theta(o);
    power_or_usage(o, kSpectrumLimit, "spectrum");
    Outcome out;
    out.body = {{"params", base_params(o)}, {"constraint", constraint_json(c)}, {"theta", to_json(theta)}};
    if (o.dry_run) return out;
    Stopwatch sw;
    auto spec = std::make_shared<std::vector<Amplitude>>(shifted_spectrum(c, theta, Base{o.b}, o.k));
    timings["spectrum_s"] = sw.seconds();
    double max_mod = 0.0, l1 = 0.0;
    for (const auto& z : *spec) {
        max_mod = std::max(max_mod, std::abs(z));
        l1 += std::abs(z);
    }
    out.body["size"] = spec->size();
    out.body["energy"] = spectrum_energy(*spec);
    out.body["l1"] = l1;
    out.body["max_modulus"] = max_mod;
    out.csv = [spec](std::ostream& os) { write_spectrum_csv(os, *spec); };
    out.summary = "size " + std::to_string(spec->size());
    return out;
}

Outcome run_arcs(const Options& o, Json& timings) {
    const Base b{o.b};
    const u64 n = power_or_usage(o, kSpectrumLimit, "arcs");
    const i64 d0 = o.d0.value_or(default_d0(b, o.k));
    const double T = o.threshold.value_or(std::pow(o.k * std::log(static_cast<double>(o.b)), o.A));
    Outcome out;
    out.body = {{"params", {{"b", o.b}, {"k", o.k}, {"d0", d0}, {"threshold", T}}}};
    if (o.dry_run) return out;
    Stopwatch sw;
    if (o.format == "csv") {
        if (n > kArcTableLimit) throw UsageError("--format csv: the per-a arc table needs b^k <= 2000000");
        auto arcs = std::make_shared<ArcDecomposition>(classify_arcs(b, o.k, T, d0, o.workers));
        out.body["arcs"] = {{"major_count", arcs->major_count}, {"minor_count", arcs->minor_count}};
        out.csv = [arcs](std::ostream& os) { write_arcs_csv(os, *arcs); };
    } else {
        out.body["arcs"] = to_json(count_arcs(b, o.k, T, d0, o.workers));
    }
    timings["arcs_s"] = sw.seconds();
    out.summary = "major " + out.body["arcs"]["major_count"].dump() + "  minor " + out.body["arcs"]["minor_count"].dump();
    return out;
}

// ---- verify -----------------------------------------------------------------

double fitted_or_given_C(const Options& o, int a0) {
    return o.C ? *o.C : fit_l1_constant(Base{o.b}, a0);
}

Outcome verify_l1_cmd(const Options& o, Json&) {
    const auto c = constraint_of(o);
    const auto ks = parse_int_list(o.ks, "--ks");
    for (int k : ks) c.validate(Base{o.b}, k);
    Outcome out;
    out.body = {{"lemma", "l1"}, {"params", {{"b", o.b}, {"ks", ks}, {"theta_count", o.theta_count}}},
                {"constraint", constraint_json(c)}};
    if (o.dry_run) return out;
    auto sweep = std::make_shared<L1Sweep>(l1_sweep(c, Base{o.b}, ks, o.theta_count));
    const auto& last = sweep->per_k.back();
    out.body["k"] = last.k;
    out.body["lhs_max"] = last.lhs_max;
    out.body["rhs"] = std::pow(sweep->C_max * o.b * std::log(static_cast<double>(o.b)), last.k);
    out.body["ratio"] = last.lhs_max / out.body["rhs"].get<double>();
    out.body["fitted"] = to_json(*sweep);
    out.passed = sweep->C_max / sweep->C_min < 2.0;
    out.csv = [sweep](std::ostream& os) { write_l1_csv(os, *sweep); };
    out.summary = "C_min " + std::to_string(sweep->C_min) + "  C_max " + std::to_string(sweep->C_max);
    return out;
}

Outcome verify_large_sieve_cmd(const Options& o, Json&) {
    const auto c = constraint_of(o);
    c.validate(Base{o.b}, o.k);
    const auto theta = parse_theta(o);
    Outcome out;
    out.body = {{"lemma", "large-sieve"}, {"b", o.b}, {"k", o.k},
                {"params", {{"D", o.D}, {"theta", to_json(theta)}, {"C", o.C ? Json(*o.C) : Json("fitted")}}}};
    if (o.dry_run) return out;
    const double C = fitted_or_given_C(o, c.kind() == ConstraintKind::MissingDigit ? c.a0() : 0);
    const auto r = verify_large_sieve(c, Base{o.b}, o.k, o.D, theta, C);
    out.body["lhs_max"] = r.lhs;
    out.body["rhs"] = r.rhs;
    out.body["ratio"] = r.ratio;
    out.body["fitted"] = {{"C", C}};
    out.body["result"] = to_json(r);
    out.passed = std::isfinite(r.ratio);
    out.summary = "ratio " + std::to_string(r.ratio);
    return out;
}

Outcome verify_hybrid_cmd(const Options& o, Json&) {
    const auto c = constraint_of(o);
    c.validate(Base{o.b}, o.k);
    Outcome out;
    out.body = {{"lemma", "hybrid"}, {"b", o.b}, {"k", o.k},
                {"params", {{"D", o.D}, {"B", o.B}, {"C", o.C ? Json(*o.C) : Json("fitted")}}}};
    if (o.dry_run) return out;
    const double C = fitted_or_given_C(o, c.kind() == ConstraintKind::MissingDigit ? c.a0() : 0);
    const auto r = verify_hybrid(c, Base{o.b}, o.k, o.D, o.B, C);
    const double exponent = c.kind() == ConstraintKind::DigitSumResidue ? r.exponents.beta_b : r.exponents.alpha_b;
    out.body["lhs_max"] = r.lhs;
    out.body["rhs"] = r.rhs;
    out.body["ratio"] = r.ratio;
    out.body["fitted"] = to_json(r.exponents);
    out.body["result"] = to_json(r);
    out.passed = r.realized_exponent <= exponent + 0.1;
    out.summary = "realized exponent " + std::to_string(r.realized_exponent) + "  fitted " + std::to_string(exponent);
    return out;
}

Outcome verify_linf1_cmd(const Options& o, Json&) {
    const auto c = constraint_of(o);
    Outcome out;
    out.body = {{"lemma", "linf1"}, {"b", o.b}, {"k", o.k}, {"params", {{"ell", o.ell}, {"d", o.d}, {"eps", o.eps}}},
                {"constraint", constraint_json(c)}};
    if (o.dry_run) return out;
    const auto r = verify_linf_rational(c, Base{o.b}, o.k, o.ell, o.d, o.eps);
    out.body["lhs_max"] = r.value;
    out.body["rhs"] = r.trivial;
    out.body["ratio"] = r.value / r.trivial;
    out.body["fitted"] = {{"c_b", r.c_empirical}};
    out.body["result"] = to_json(r);
    out.passed = r.passed;
    out.summary = "c_b " + std::to_string(r.c_empirical);
    return out;
}

Outcome verify_linf2_cmd(const Options& o, Json&) {
    const Rational alpha = parse_rational(o.alpha, "--alpha");
    Outcome out;
    out.body = {{"lemma", "linf2"}, {"b", o.b}, {"k", o.k}, {"params", {{"alpha", alpha.str()}, {"grid", o.grid}}}};
    if (o.k < 1) throw UsageError("--k must be >= 1");
    if (o.dry_run) return out;
    const auto r = verify_linf_character(Base{o.b}, o.k, alpha, o.grid);
    out.body["lhs_max"] = r.max_value;
    out.body["rhs"] = r.bound;
    out.body["ratio"] = r.max_value / r.bound;
    out.body["fitted"] = Json::object();
    out.body["result"] = to_json(r);
    out.passed = r.passed();
    out.summary = std::to_string(r.checked) + " points, " + std::to_string(r.violations) + " violations";
    return out;
}

Outcome verify_single_digit_cmd(const Options& o, Json&) {
    Outcome out;
    out.body = {{"lemma", "single-digit"}, {"b", o.b}, {"params", {{"grid", o.grid}}}};
    if (o.dry_run) return out;
    const auto r = single_digit_inequalities(Base{o.b}, o.grid);
    out.body["result"] = to_json(r);
    out.passed = r.passed();
    std::size_t violations = 0;
    for (const auto& c : r.asserted) violations += c.violations;
    out.summary = std::to_string(violations) + " violations in asserted checks";
    return out;
}

Outcome verify_vinogradov_cmd(const Options& o, Json& timings) {
    VinogradovLemma which;
    if (o.lemma == "equidistribution") {
        which = VinogradovLemma::Equidistribution;
    } else if (o.lemma == "prime-sum") {
        which = VinogradovLemma::PrimeSum;
    } else {
        throw UsageError("--lemma must be equidistribution or prime-sum");
    }
    Outcome out;
    out.body = {{"lemma", "vinogradov"},
                {"params", {{"which", to_string(which)}, {"size", o.size}, {"max_scale", o.max_scale}, {"seed", o.seed}}}};
    auto grid = make_vinogradov_grid(which, o.size, o.max_scale, o.seed);
    auto doubled = make_vinogradov_grid(which, 2 * o.size, o.max_scale, o.seed);
    if (o.dry_run) return out;
    Stopwatch sw;
    PrimeTable table = which == VinogradovLemma::PrimeSum ? table_for(o.max_scale + 1, o) : PrimeTable{};
    timings["sieve_s"] = sw.seconds();
    auto fit = std::make_shared<BoundFit>(fit_vinogradov_constants(grid, table));
    const auto fit2 = fit_vinogradov_constants(doubled, table);
    const double change = std::max(fit->fitted_constant, fit2.fitted_constant) /
                          std::min(fit->fitted_constant, fit2.fitted_constant);
    for (const auto& r : fit->rows) {
        if (!out.body.contains("ratio") || r.ratio > out.body["ratio"].get<double>()) {
            out.body["lhs_max"] = r.lhs;
            out.body["rhs"] = r.rhs;
            out.body["ratio"] = r.ratio;
        }
    }
    out.body["fitted"] = to_json(*fit);
    out.body["fitted_doubled"] = to_json(fit2);
    out.body["doubling_change"] = change;
    std::size_t bad = 0;
    for (const BoundFit* f : {static_cast<const BoundFit*>(fit.get()), &fit2}) {
        for (const auto& r : f->rows) bad += std::isfinite(r.ratio) ? 0 : 1;
        bad += f->warnings.size();
    }
    out.passed = change < 2.0 && bad == 0;
    out.csv = [fit](std::ostream& os) { write_fit_csv(os, *fit); };
    out.summary = "fitted " + std::to_string(fit->fitted_constant) + "  doubled " + std::to_string(fit2.fitted_constant);
    return out;
}

Outcome verify_lemma7_cmd(const Options& o, Json& timings) {
    const Base b{o.b};
    const int a0 = o.missing_digit.value_or(7 % o.b);
    const Rational alpha = parse_rational(o.alpha, "--alpha");
    const u64 n = power_or_usage(o, kOracleLimit, "lemma7");
    const i64 d0 = o.d0.value_or(default_d0(b, o.k));
    Outcome out;
    out.body = {{"lemma", "lemma7"}, {"b", o.b}, {"k", o.k},
                {"params", {{"D", o.D}, {"B", o.B}, {"d0", d0}, {"a0", a0}, {"alpha", alpha.str()},
                            {"C", o.C ? Json(*o.C) : Json("fitted")}}}};
    if (o.dry_run) return out;
    Stopwatch sw;
    const auto table = table_for(n, o);
    timings["sieve_s"] = sw.seconds();
    const double C = fitted_or_given_C(o, a0);
    auto rep = std::make_shared<MinorArcReport>(minor_arc_report(b, o.k, o.D, o.B, d0, a0, alpha, C, table));
    out.body["result"] = to_json(*rep);
    out.body["fitted"] = {{"C", C}};
    bool finite = true;
    double worst = -1.0;
    for (const auto& r : rep->rows) {
        finite = finite && std::isfinite(r.ratio);
        if (r.ratio > worst) {
            worst = r.ratio;
            out.body["lhs_max"] = r.lhs;
            out.body["rhs"] = r.rhs;
            out.body["ratio"] = r.ratio;
        }
    }
    out.passed = finite;
    out.csv = [rep](std::ostream& os) { write_minor_arc_csv(os, *rep); };
    out.summary = std::to_string(rep->rows.size()) + " variants, " + std::to_string(rep->warnings.size()) + " range warnings";
    return out;
}

Outcome verify_inversion_cmd(const Options& o, Json& timings) {
    const auto c = constraint_of(o);
    c.validate(Base{o.b}, o.k);
    const u64 n = power_or_usage(o, kOracleLimit, "inversion");
    Outcome out;
    out.body = {{"lemma", "inversion"}, {"b", o.b}, {"k", o.k}, {"constraint", constraint_json(c)}};
    if (o.dry_run) return out;
    Stopwatch sw;
    const auto table = table_for(n, o);
    timings["sieve_s"] = sw.seconds();
    const auto r = inversion_identity_check(c, Base{o.b}, o.k, table);
    out.body["lhs_max"] = r.lhs;
    out.body["rhs"] = r.rhs;
    out.body["ratio"] = r.lhs / r.rhs;
    out.body["result"] = to_json(r);
    out.passed = r.rel_err <= 1e-6;
    out.summary = "rel_err " + std::to_string(r.rel_err);
    return out;
}

Outcome verify_characters_cmd(const Options& o, Json& timings) {
    if (!o.modulus) throw UsageError("--modulus is required");
    const u64 n = power_or_usage(o, kOracleLimit, "characters");
    const auto c = DigitConstraint::digit_sum_residue(*o.modulus, o.residue, 0);
    c.validate(Base{o.b}, o.k);
    Outcome out;
    out.body = {{"lemma", "characters"}, {"b", o.b}, {"k", o.k}, {"params", {{"m", *o.modulus}, {"a", o.residue}}}};
    if (o.dry_run) return out;
    Stopwatch sw;
    const auto table = table_for(n, o);
    timings["sieve_s"] = sw.seconds();
    const auto r = digit_sum_character_decomposition(Base{o.b}, o.k, *o.modulus, o.residue, table);
    const double oracle = count_constrained_primes(c, Base{o.b}, o.k, true, table);
    const double rel = std::abs(r.total - oracle) / std::max(oracle, 1.0);
    out.body["lhs_max"] = oracle;
    out.body["rhs"] = r.total;
    out.body["ratio"] = oracle / r.total;
    out.body["result"] = to_json(r);
    out.body["oracle"] = oracle;
    out.body["rel_err"] = rel;
    out.passed = rel <= 1e-6;
    out.summary = "rel_err " + std::to_string(rel);
    return out;
}

Outcome verify_major_arc_cmd(const Options& o, Json&) {
    if (!o.missing_digit) throw UsageError("--missing-digit is required");
    Outcome out;
    out.body = {{"lemma", "major-arc"}, {"b", o.b}, {"k", o.k}, {"params", {{"a0", *o.missing_digit}, {"A", o.A}}}};
    DigitConstraint::missing_digit(*o.missing_digit).validate(Base{o.b}, o.k);
    if (o.dry_run) return out;
    const auto m = major_arc_main_term(Base{o.b}, o.k, *o.missing_digit, o.A);
    if (m.ap_form) {
        out.body["lhs_max"] = m.ap_form->to_double();
        out.body["rhs"] = m.main_term;
        out.body["ratio"] = m.ap_form->to_double() / m.main_term;
    }
    out.body["result"] = to_json(m);
    out.passed = !m.ap_form || !m.main_exact || *m.ap_form == *m.main_exact;
    out.summary = "kappa " + m.kappa.str() + "  main " + std::to_string(m.main_term);
    return out;
}

// A fixed desk-scale tour of every module; each section is small enough to
// finish in seconds.
Outcome run_report_all(const Options& o, Json& timings) {
    Outcome out;
    out.body = {{"params", {{"seed", o.seed}}}};
    if (o.dry_run) {
        out.body["sections"] = {"count", "inversion", "characters", "major_arc", "l1", "large_sieve", "hybrid",
                                "linf1", "linf2", "single_digit", "vinogradov", "lemma7", "estimate"};
        return out;
    }
    Stopwatch total;
    const auto table = table_for(1'000'000, o);
    const Base ten{10};
    const auto no7 = DigitConstraint::missing_digit(7);
    Json s = Json::object();
    bool passed = true;
    auto section = [&](const char* name, Json body, bool ok) {
        body["passed"] = ok;
        s[name] = std::move(body);
        passed = passed && ok;
    };

    section("count", {{"b", 10}, {"k", 2}, {"a0", 7}, {"count", count_constrained_primes(no7, ten, 2, false, table)}},
            true);
    const auto inv = inversion_identity_check(no7, ten, 4, table);
    section("inversion", to_json(inv), inv.rel_err <= 1e-6);
    const auto ch = digit_sum_character_decomposition(ten, 4, 7, 3, table);
    const double ch_oracle = count_constrained_primes(DigitConstraint::digit_sum_residue(7, 3, 0), ten, 4, true, table);
    section("characters", to_json(ch), std::abs(ch.total - ch_oracle) <= 1e-6 * ch_oracle);
    const auto main = major_arc_main_term(ten, 3, 7, 8.0);
    section("major_arc", to_json(main), *main.ap_form == *main.main_exact);
    const auto sweep = l1_sweep(no7, ten, {2, 3, 4}, 16);
    section("l1", to_json(sweep), sweep.C_max / sweep.C_min < 2.0);
    const auto ls = verify_large_sieve(no7, ten, 3, 4, Frequency{}, sweep.C_max);
    section("large_sieve", to_json(ls), std::isfinite(ls.ratio));
    const auto hy = verify_hybrid(no7, ten, 5, 3, 100.0, sweep.C_max);
    section("hybrid", to_json(hy), hy.realized_exponent <= hy.exponents.alpha_b + 0.1);
    const auto l1r = verify_linf_rational(no7, ten, 6, 1, 3, 0.0);
    section("linf1", to_json(l1r), l1r.passed);
    const auto l2 = verify_linf_character(ten, 10, Rational{1, 2}, 2000);
    section("linf2", to_json(l2), l2.passed());
    const auto sd = single_digit_inequalities(ten, 10000);
    section("single_digit", to_json(sd), sd.passed());
    const auto vg = fit_vinogradov_constants(make_vinogradov_grid(VinogradovLemma::PrimeSum, 100, 1'000'000, o.seed), table);
    section("vinogradov", to_json(vg), vg.warnings.empty());
    const auto mr = minor_arc_report(ten, 5, 4, 10.0, default_d0(ten, 5), 7, Rational{1, 2}, sweep.C_max, table);
    bool finite = true;
    for (const auto& r : mr.rows) finite = finite && std::isfinite(r.ratio);
    section("lemma7", to_json(mr), finite);
    EstimateConfig cfg;
    cfg.C = sweep.C_max;
    cfg.workers = o.workers;
    const auto est = estimate_count(no7, ten, 6, cfg, &table);
    section("estimate", to_json(est), est.ratio && *est.ratio > 0.8 && *est.ratio < 1.2);

    timings["total_s"] = total.seconds();
    out.body["sections"] = s;
    out.passed = passed;
    out.summary = passed ? "all sections passed" : "some sections failed";
    return out;
}

// ---- plumbing -----------------------------------------------------------------

void add_common(CLI::App* cmd, Options& o, bool with_constraint) {
    cmd->add_option("--b", o.b, "base b >= 2")->capture_default_str();
    cmd->add_option("--k", o.k, "number of digits")->capture_default_str();
    if (with_constraint) {
        cmd->add_option("--missing-digit", o.missing_digit, "forbidden digit a0");
        cmd->add_option("--modulus", o.modulus, "digit-sum modulus m, gcd(m, b-1) = 1");
        cmd->add_option("--residue", o.residue, "digit-sum residue a mod m")->capture_default_str();
        cmd->add_option("--prescribed", o.prescribed, "prescribed digits as pos:digit,pos:digit");
        cmd->add_flag("--all", o.all_digits, "no constraint (every integer below b^k)");
    }
    cmd->add_option("--seed", o.seed, "seed for sampled grids")->capture_default_str();
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--output", o.output, "report path (stdout when absent)");
    cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_flag("--dry-run", o.dry_run, "validate and print the resolved plan only");
}

// Verifier reports share a header: lemma, b, k, params, lhs_max, rhs, ratio,
// fitted; absent entries are null.
Json verify_header_first(const Json& body) {
    Json out = Json::object();
    for (const char* key : {"lemma", "b", "k", "params", "lhs_max", "rhs", "ratio", "fitted"}) {
        out[key] = body.contains(key) ? body[key] : Json(nullptr);
    }
    for (const auto& [key, value] : body.items()) {
        if (!out.contains(key)) out[key] = value;
    }
    return out;
}

int emit(const std::string& command, Outcome out, Json timings, const Options& o) {
    if (command.starts_with("verify ") && !o.dry_run) out.body = verify_header_first(out.body);
    if (o.dry_run) {
        Json plan = {{"schema_version", kSchemaVersion}, {"command", command}, {"dry_run", true}};
        for (auto& [key, value] : out.body.items()) plan[key] = value;
        std::cout << plan.dump(2) << '\n';
        return kExitOk;
    }
    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) throw UsageError("--output: cannot open " + o.output);
    }
    std::ostream& sink = o.output.empty() ? std::cout : file;
    if (o.format == "csv") {
        if (!out.csv) throw UsageError("--format csv is not available for " + command);
        out.csv(sink);
    } else if (!(o.output.empty() && out.plain_stdout)) {
        out.body["passed"] = out.passed;
        sink << make_report(command, out.body, std::move(timings)).dump(2) << '\n';
    }
    if (!o.output.empty() || out.plain_stdout) std::cout << out.summary << '\n';
    if (!out.passed) std::cerr << command << ": check failed\n";
    return out.passed ? kExitOk : kExitFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counts, estimates and bound checks for primes with restricted digits"};
    app.require_subcommand(1);
    Options o;

    using Runner = std::function<Outcome(const Options&, Json&)>;
    std::vector<std::pair<CLI::App*, std::pair<std::string, Runner>>> commands;
    auto reg = [&](CLI::App* parent, const std::string& name, const std::string& help, bool constraint, Runner run,
                   const std::string& label) {
        auto* cmd = parent->add_subcommand(name, help);
        add_common(cmd, o, constraint);
        commands.push_back({cmd, {label, std::move(run)}});
        return cmd;
    };

    auto* count = reg(&app, "count", "count primes (or Lambda mass with --weighted) below b^k under a constraint", true,
                      run_count, "count");
    count->add_flag("--weighted", o.weighted, "sum Lambda(n) instead of counting primes");

    auto* estimate = reg(&app, "estimate", "circle-method prediction, error budget and oracle", true, run_estimate,
                         "estimate");
    estimate->add_flag("--weighted", o.weighted, "weighted by Lambda (default)");
    estimate->add_flag("--unweighted", o.unweighted, "count primes");
    estimate->add_option("--A", o.A, "log-power for the major-arc threshold")->capture_default_str();
    estimate->add_option("--threshold", o.threshold, "major-arc threshold T");
    estimate->add_option("--d0", o.d0, "Dirichlet quality D0");
    estimate->add_option("--C", o.C, "L1 constant (fitted when absent)");
    estimate->add_flag("--no-oracle", o.no_oracle, "skip the sieve oracle");

    auto* fourier = reg(&app, "fourier", "evaluate the digit transform at theta", true, run_fourier, "fourier");
    fourier->add_option("--theta", o.theta, "theta as p/q")->capture_default_str();
    fourier->add_option("--offset", o.offset, "real offset added to theta");
    fourier->add_option("--character", o.character, "digit-sum character index j (alpha = j/m)")->capture_default_str();

    auto* spectrum = reg(&app, "spectrum", "transform at theta + a/b^k for every a", true, run_spectrum, "spectrum");
    spectrum->add_option("--theta", o.theta, "theta as p/q")->capture_default_str();
    spectrum->add_option("--offset", o.offset, "real offset added to theta");
    spectrum->add_option("--character", o.character, "digit-sum character index j (alpha = j/m)")->capture_default_str();

    auto* arcs = reg(&app, "arcs", "major/minor arc classification", false, run_arcs, "arcs");
    arcs->add_option("--threshold", o.threshold, "major-arc threshold T (default (log b^k)^A)");
    arcs->add_option("--A", o.A, "log-power for the default threshold")->capture_default_str();
    arcs->add_option("--d0", o.d0, "Dirichlet quality D0 (default b^floor(k/2))");

    reg(&app, "report-all", "desk-scale run of every module", false, run_report_all, "report-all");

    auto* verify = app.add_subcommand("verify", "check one inequality or identity");
    verify->require_subcommand(1);

    auto* l1 = reg(verify, "l1", "L1 sums over shifted spectra and the fitted C", true, verify_l1_cmd, "verify l1");
    l1->add_option("--ks", o.ks, "comma-separated k values")->capture_default_str();
    l1->add_option("--theta-count", o.theta_count, "theta samples per k")->capture_default_str();

    auto* ls = reg(verify, "large-sieve", "sup over Farey neighbourhoods", true, verify_large_sieve_cmd, "verify large-sieve");
    ls->add_option("--D", o.D, "dyadic denominator scale")->capture_default_str();
    ls->add_option("--theta", o.theta, "shift theta as p/q")->capture_default_str();
    ls->add_option("--C", o.C, "L1 constant (fitted when absent)");

    auto* hy = reg(verify, "hybrid", "hybrid L1 sum and its growth exponent", true, verify_hybrid_cmd, "verify hybrid");
    hy->add_option("--D", o.D, "dyadic denominator scale")->capture_default_str();
    hy->add_option("--B", o.B, "eta range")->capture_default_str();
    hy->add_option("--C", o.C, "L1 constant (fitted when absent)");

    auto* li1 = reg(verify, "linf1", "missing-digit transform near ell/d", true, verify_linf1_cmd, "verify linf1");
    li1->add_option("--ell", o.ell, "numerator")->capture_default_str();
    li1->add_option("--d", o.d, "denominator")->capture_default_str();
    li1->add_option("--eps", o.eps, "offset from ell/d")->capture_default_str();

    auto* li2 = reg(verify, "linf2", "pointwise bound for the digit-sum character", false, verify_linf2_cmd, "verify linf2");
    li2->add_option("--alpha", o.alpha, "character frequency p/q")->capture_default_str();
    li2->add_option("--grid", o.grid, "theta grid size")->capture_default_str();

    auto* sd = reg(verify, "single-digit", "one-level inequalities on a theta grid", false, verify_single_digit_cmd,
                   "verify single-digit");
    sd->add_option("--grid", o.grid, "grid size (>= 1000)")->capture_default_str();

    auto* vi = reg(verify, "vinogradov", "fit the implied constants of the exponential-sum lemmas", false,
                   verify_vinogradov_cmd, "verify vinogradov");
    vi->add_option("--lemma", o.lemma, "equidistribution or prime-sum")->capture_default_str();
    vi->add_option("--size", o.size, "grid size, a multiple of 20")->capture_default_str();
    vi->add_option("--max-scale", o.max_scale, "largest N or x")->capture_default_str();

    auto* l7 = reg(verify, "lemma7", "minor-arc sums against their bounds", false, verify_lemma7_cmd, "verify lemma7");
    l7->add_option("--missing-digit", o.missing_digit, "forbidden digit a0 (default 7 mod b)");
    l7->add_option("--alpha", o.alpha, "character frequency p/q")->capture_default_str();
    l7->add_option("--D", o.D, "dyadic denominator scale")->capture_default_str();
    l7->add_option("--B", o.B, "dyadic eta scale")->capture_default_str();
    l7->add_option("--d0", o.d0, "Dirichlet quality D0");
    l7->add_option("--C", o.C, "L1 constant (fitted when absent)");

    reg(verify, "inversion", "Fourier inversion identity on Z/b^k", true, verify_inversion_cmd, "verify inversion");

    auto* chd = reg(verify, "characters", "digit-sum character decomposition", false, verify_characters_cmd,
                    "verify characters");
    chd->add_option("--modulus", o.modulus, "digit-sum modulus m");
    chd->add_option("--residue", o.residue, "residue a")->capture_default_str();

    auto* ma = reg(verify, "major-arc", "kappa (b-1)^k against the residue-class count", false, verify_major_arc_cmd,
                   "verify major-arc");
    ma->add_option("--missing-digit", o.missing_digit, "forbidden digit a0");
    ma->add_option("--A", o.A, "log-power for the error term")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (o.workers == 0) o.workers = std::max(1u, std::thread::hardware_concurrency());

    for (auto& [cmd, entry] : commands) {
        if (!cmd->parsed()) continue;
        const auto& [label, run] = entry;
        try {
            Json timings = Json::object();
            Stopwatch sw;
            Outcome out = run(o, timings);
            timings["total_s"] = sw.seconds();
            return emit(label, std::move(out), std::move(timings), o);
        } catch (const UsageError& e) {
            std::cerr << label << ": " << e.what() << '\n';
        } catch (const ConstraintError& e) {
            std::cerr << label << ": constraint: " << e.what() << '\n';
        } catch (const PreconditionError& e) {
            std::cerr << label << ": precondition: " << e.what() << '\n';
        } catch (const ResourceError& e) {
            std::cerr << label << ": resource: " << e.what() << '\n';
        } catch (const UnsupportedEstimatorError& e) {
            std::cerr << label << ": unsupported: " << e.what() << '\n';
        } catch (const ComputationError& e) {
            std::cerr << label << ": computation: " << e.what() << '\n';
        }
        return kExitUsage;
    }
    return kExitUsage;
}
