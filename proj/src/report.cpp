#include "digitprimes/report.hpp"

#include <cmath>
#include <ctime>
#include <ostream>

namespace digitprimes {

namespace {

// JSON has no inf or NaN; they become null.
Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json optional_number(const std::optional<double>& x) {
    return x ? number(*x) : Json(nullptr);
}

Json complex_pair(const Amplitude& z) {
    return Json::array({number(z.real()), number(z.imag())});
}

} // namespace

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json make_report(const std::string& command, Json body, Json timings) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = command;
    for (auto& [key, value] : body.items()) out[key] = value;
    out[kTimestampKey] = utc_timestamp();
    out[kTimingsKey] = std::move(timings);
    return out;
}

Json strip_volatile(const Json& report) {
    if (report.is_array()) {
        Json out = Json::array();
        for (const auto& v : report) out.push_back(strip_volatile(v));
        return out;
    }
    if (!report.is_object()) return report;
    Json out = Json::object();
    for (const auto& [key, value] : report.items()) {
        if (key == kTimestampKey || key == kTimingsKey) continue;
        out[key] = strip_volatile(value);
    }
    return out;
}

Json to_json(const ExponentSet& e) {
    return {{"alpha_b", number(e.alpha_b)},
            {"beta_b", number(e.beta_b)},
            {"c_b", number(e.c_b)},
            {"delta", number(e.delta)},
            {"C_fit", number(e.C_fit)}};
}

Json to_json(const Frequency& f) {
    return {{"num", f.num()}, {"den", f.den()}, {"offset", number(f.offset())}, {"value", number(f.value())}};
}

Json to_json(const Rational& r) {
    return r.str();
}

Json to_json(const RationalApprox& r) {
    return {{"ell", r.ell}, {"d", r.d}, {"beta", number(r.beta)}, {"d0", r.d0}};
}

Json to_json(const L1Result& r) {
    Json thetas = Json::array(), lhs = Json::array();
    for (const auto& t : r.thetas) thetas.push_back(number(t.value()));
    for (double v : r.lhs) lhs.push_back(number(v));
    return {{"k", r.k}, {"lhs_max", number(r.lhs_max)}, {"C_k", number(r.C_k)}, {"thetas", thetas}, {"lhs", lhs}};
}

Json to_json(const L1Sweep& s) {
    Json per_k = Json::array();
    for (const auto& r : s.per_k) per_k.push_back(to_json(r));
    return {{"C_min", number(s.C_min)}, {"C_max", number(s.C_max)}, {"per_k", per_k}};
}

Json to_json(const LargeSieveResult& r) {
    return {{"D", r.D},
            {"fractions", r.fractions},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"ratio", number(r.ratio)},
            {"grid_part", number(r.grid_part)},
            {"correction_part", number(r.correction_part)}};
}

Json to_json(const HybridResult& r) {
    return {{"D", r.D},
            {"B", number(r.B)},
            {"terms", r.terms},
            {"lhs", number(r.lhs)},
            {"rhs", number(r.rhs)},
            {"rhs_power", number(r.rhs_power)},
            {"rhs_linear", number(r.rhs_linear)},
            {"ratio", number(r.ratio)},
            {"dominant", r.dominant},
            {"realized_exponent", number(r.realized_exponent)},
            {"exponents", to_json(r.exponents)}};
}

Json to_json(const LinfRationalResult& r) {
    return {{"ell", r.ell},
            {"d", r.d},
            {"eps", number(r.eps)},
            {"value", number(r.value)},
            {"trivial", number(r.trivial)},
            {"c_empirical", number(r.c_empirical)},
            {"passed", r.passed}};
}

Json to_json(const LinfCharacterResult& r) {
    return {{"alpha", to_json(r.alpha)},
            {"grid", r.grid},
            {"checked", r.checked},
            {"bound", number(r.bound)},
            {"stated_bound", number(r.stated_bound)},
            {"max_value", number(r.max_value)},
            {"argmax_theta", number(r.argmax_theta)},
            {"violations", r.violations},
            {"above_stated", r.above_stated},
            {"first_violation", optional_number(r.first_violation)},
            {"passed", r.passed()}};
}

Json to_json(const InequalityCheck& c) {
    return {{"name", c.name},
            {"checked", c.checked},
            {"violations", c.violations},
            {"first_violation", c.first_violation ? Json(*c.first_violation) : Json(nullptr)},
            {"passed", c.passed()}};
}

Json to_json(const SingleDigitReport& r) {
    Json asserted = Json::array(), diagnostics = Json::array();
    for (const auto& c : r.asserted) asserted.push_back(to_json(c));
    for (const auto& c : r.diagnostics) diagnostics.push_back(to_json(c));
    return {{"b", r.b}, {"grid_size", r.grid_size}, {"asserted", asserted}, {"diagnostics", diagnostics},
            {"passed", r.passed()}};
}

Json to_json(const BoundFit& fit) {
    Json warnings = Json::array();
    for (const auto& w : fit.warnings) warnings.push_back(w);
    std::size_t nonfinite = 0;
    for (const auto& row : fit.rows) nonfinite += std::isfinite(row.ratio) ? 0 : 1;
    return {{"label", fit.label},
            {"points", fit.rows.size()},
            {"fitted_constant", number(fit.fitted_constant)},
            {"median_ratio", number(fit.median_ratio)},
            {"nonfinite_ratios", nonfinite},
            {"warnings", warnings}};
}

Json to_json(const InversionCheck& r) {
    return {{"lhs", number(r.lhs)}, {"rhs", number(r.rhs)}, {"rel_err", number(r.rel_err)},
            {"imag_residual", number(r.imag_residual)}};
}

Json to_json(const CharacterDecomposition& r) {
    Json terms = Json::array();
    for (const auto& z : r.terms) terms.push_back(complex_pair(z));
    return {{"main", number(r.main)}, {"character_terms", terms}, {"total", number(r.total)},
            {"imag_residual", number(r.imag_residual)}};
}

Json to_json(const MinorArcReport& r) {
    Json rows = Json::array(), warnings = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"variant", row.variant},
                        {"terms", row.terms},
                        {"lhs", number(row.lhs)},
                        {"rhs", number(row.rhs)},
                        {"ratio", number(row.ratio)}});
    }
    for (const auto& w : r.warnings) warnings.push_back(w);
    return {{"b", r.b}, {"k", r.k}, {"D", r.D}, {"B", number(r.B)}, {"d0", r.d0},
            {"exponents", to_json(r.exponents)}, {"rows", rows}, {"warnings", warnings}};
}

Json to_json(const MainTermData& m) {
    return {{"kappa", to_json(m.kappa)},
            {"main_term", number(m.main_term)},
            {"main_exact", m.main_exact ? to_json(*m.main_exact) : Json(nullptr)},
            {"ap_form", m.ap_form ? to_json(*m.ap_form) : Json(nullptr)},
            {"routes_agree", m.ap_form && m.main_exact ? Json(*m.ap_form == *m.main_exact) : Json(nullptr)},
            {"error_term", number(m.error_term)},
            {"delta", number(m.delta)},
            {"c_b", number(m.c_b)}};
}

Json to_json(const ArcCounts& c) {
    return {{"major_count", c.major}, {"minor_count", c.minor}};
}

Json to_json(const EstimateResult& r) {
    Json terms = Json::object();
    for (const auto& t : r.error_terms) terms[t.name] = number(t.value);
    return {{"constraint", r.constraint},
            {"b", r.b},
            {"k", r.k},
            {"weighted", r.weighted},
            {"prediction", number(r.prediction)},
            {"error_budget", number(r.error_budget)},
            {"error_terms", terms},
            {"oracle", optional_number(r.oracle)},
            {"ratio", optional_number(r.ratio)},
            {"realized_error", r.oracle ? number(*r.oracle - r.prediction) : Json(nullptr)},
            {"arcs", r.arcs ? to_json(*r.arcs) : Json(nullptr)},
            {"threshold", number(r.threshold)},
            {"d0", r.d0},
            {"C", number(r.C)},
            {"exponents", to_json(r.exponents)}};
}

void write_l1_csv(std::ostream& os, const L1Sweep& sweep) {
    os << "k,theta,lhs\n";
    os.precision(17);
    for (const auto& r : sweep.per_k) {
        for (std::size_t i = 0; i < r.thetas.size(); ++i) os << r.k << ',' << r.thetas[i].value() << ',' << r.lhs[i] << '\n';
    }
}

void write_minor_arc_csv(std::ostream& os, const MinorArcReport& rep) {
    os << "variant,terms,lhs,rhs,ratio\n";
    os.precision(17);
    for (const auto& r : rep.rows) os << r.variant << ',' << r.terms << ',' << r.lhs << ',' << r.rhs << ',' << r.ratio << '\n';
}

} // namespace digitprimes
