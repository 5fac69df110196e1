#ifndef DIGITPRIMES_CIRCLE_HPP
#define DIGITPRIMES_CIRCLE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "digitprimes/bounds.hpp"
#include "digitprimes/expsums.hpp"

namespace digitprimes {

// ---- arcs ---------------------------------------------------------------

// Largest b^k for which classify_arcs keeps the per-a table; count_arcs goes
// up to kSpectrumLimit.
inline constexpr u64 kArcTableLimit = 2'000'000;

enum class ArcLabel { Major, Minor };
std::string to_string(ArcLabel label);

struct ArcEntry {
    ArcLabel label = ArcLabel::Minor;
    RationalApprox approx;
};

struct ArcDecomposition {
    int b = 0;
    int k = 0;
    i64 d0 = 1;
    double threshold = 1.0;
    std::vector<ArcEntry> arcs;  // indexed by a
    u64 major_count = 0;
    u64 minor_count = 0;
};

// b^floor(k/2).
i64 default_d0(Base b, int k);

// Major iff max(d, n |beta|) < threshold, with n = b^k.
bool is_major(const RationalApprox& approx, u64 n, double threshold);

// Writes a/b^k = ell/d + beta for every 0 <= a < b^k with dirichlet_approx(., d0).
// Needs d0 >= 1, d0^2 <= b^k and threshold >= 1.
ArcDecomposition classify_arcs(Base b, int k, double threshold, i64 d0, unsigned workers = 1);

struct ArcCounts {
    u64 major = 0;
    u64 minor = 0;
};

// Same classification without storing the table.
ArcCounts count_arcs(Base b, int k, double threshold, i64 d0, unsigned workers = 1);

// CSV with header "a,label,ell,d,beta".
void write_arcs_csv(std::ostream& os, const ArcDecomposition& arcs);

// ---- major arcs -------------------------------------------------------------

// b/(b-1) if gcd(a0, b) != 1, else b(phi(b)-1)/((b-1)phi(b)).
Rational kappa(Base b, int a0);

struct MainTermData {
    Rational kappa;
    double main_term = 0.0;  // kappa (b-1)^k
    // (b/phi(b)) sum_{0<a<b, (a,b)=1} #{m < b^k : m = a mod b, no digit a0},
    // counted by enumeration when b^k <= kOracleLimit.
    std::optional<Rational> ap_form;
    // kappa (b-1)^k as an exact fraction, when it fits in 64 bits.
    std::optional<Rational> main_exact;
    double error_term = 0.0;  // (b-1)^k / (log b^k)^A
    double delta = 0.0;       // 0: no character is involved
    double c_b = 0.0;         // empirical, see empirical_c_b
};

MainTermData major_arc_main_term(Base b, int k, int a0, double A);

// min over d < min(b^(k/3), 64) with a prime factor not dividing b, and ell
// coprime to d, of the empirical c_b from verify_linf_rational at eps = 0.
// 0 when no such d exists.
double empirical_c_b(Base b, int k, int a0);

// ---- identities ---------------------------------------------------------------

struct InversionCheck {
    double lhs = 0.0;  // sum_{n<b^k} Lambda(n) 1_A(n), counted directly
    double rhs = 0.0;  // (1/b^k) sum_a 1_A-hat(a/b^k) Lambda-hat(-a/b^k)
    double rel_err = 0.0;
    double imag_residual = 0.0;
};

// Both spectra are computed in full, so b^k <= kOracleLimit.
InversionCheck inversion_identity_check(const DigitConstraint& c, Base b, int k, const PrimeTable& table);

struct CharacterDecomposition {
    double main = 0.0;                  // psi(b^k)/m
    std::vector<Amplitude> terms;       // j = 1..m-1
    double total = 0.0;                 // main + Re sum terms
    double imag_residual = 0.0;         // Im sum terms; zero up to roundoff
};

// sum_{n<b^k, s_b(n) = a mod m} Lambda(n) split into the mean and one term
// e(-a j/m)/(m b^k) sum_t g-hat_j(t/b^k) Lambda-hat(-t/b^k) per character.
// The terms are complex; only their sum is real.
CharacterDecomposition digit_sum_character_decomposition(Base b, int k, i64 m, i64 a, const PrimeTable& table);

// ---- minor arcs -----------------------------------------------------------------

struct MinorArcRow {
    std::string variant;  // "missing_digit/eta~B", "missing_digit/eta<<1", "character/eta~B", "character/eta<<1"
    std::size_t terms = 0;
    double lhs = 0.0;
    double rhs = 0.0;  // implied constant 1
    double ratio = 0.0;
};

struct MinorArcReport {
    int b = 0;
    int k = 0;
    i64 D = 1;
    double B = 1.0;
    i64 d0 = 1;
    ExponentSet exponents;  // alpha_b, beta_b from the supplied C
    std::vector<MinorArcRow> rows;
    std::vector<std::string> warnings;  // range hypotheses that fail
};

// sum_{d ~ D} sum_ell sum_eta |F(ell/d + eta/b^k) Lambda-hat(-ell/d - eta/b^k)|
// for F the missing-digit indicator (a0) and the character g (alpha), with
// eta ~ B read as B <= |eta| < 2B and eta << 1 as |eta| <= 1. ell runs over
// 0 < ell < d coprime to d, plus ell = 0 when d = 1. Needs b^k <= kOracleLimit.
MinorArcReport minor_arc_report(Base b, int k, i64 D, double B, i64 d0, int a0, const Rational& alpha, double C,
                                const PrimeTable& table);

// ---- estimators ----------------------------------------------------------------

struct EstimateConfig {
    bool weighted = true;
    double A = 8.0;
    std::optional<double> threshold;
    std::optional<i64> d0;
    // L1 constant for alpha_b, beta_b; fitted by l1_sweep when absent.
    std::optional<double> C;
    bool count_arcs = true;
    unsigned workers = 1;
};

struct ErrorTerm {
    std::string name;
    double value = 0.0;
};

struct EstimateResult {
    std::string constraint;
    int b = 0;
    int k = 0;
    bool weighted = true;
    double prediction = 0.0;
    double error_budget = 0.0;
    std::vector<ErrorTerm> error_terms;
    std::optional<double> oracle;
    std::optional<double> ratio;  // oracle / prediction
    double threshold = 1.0;
    i64 d0 = 1;
    double C = 0.0;
    ExponentSet exponents;
    std::optional<ArcCounts> arcs;
};

// C fitted from the missing-digit L1 sums of b at the largest few k with
// b^k <= 10^6.
double fit_l1_constant(Base b, int a0);

// Main term plus error budget from the major/minor split. MissingDigit uses
// threshold (log b^k)^A; DigitSumResidue uses b^(k delta/4) with delta the
// smallest over the nontrivial characters. Unweighted results divide by
// k log b. The oracle is filled when b^k <= table->limit().
// PrescribedDigits throws UnsupportedEstimatorError.
EstimateResult estimate_count(const DigitConstraint& c, Base b, int k, const EstimateConfig& config,
                              const PrimeTable* table);

} // namespace digitprimes

#endif // DIGITPRIMES_CIRCLE_HPP
