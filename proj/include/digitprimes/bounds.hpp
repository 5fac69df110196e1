#ifndef DIGITPRIMES_BOUNDS_HPP
#define DIGITPRIMES_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "digitprimes/fourier.hpp"

namespace digitprimes {

// ||(b-1) alpha||^2 / (4 b^4).
double delta_exponent(const Rational& alpha, Base b);

// Growth exponents implied by a fitted L1 constant C:
// alpha_b = log(C b/(b-1) log b)/log b, beta_b = log(C log b)/log b.
struct ExponentSet {
    double alpha_b = 0.0;
    double beta_b = 0.0;
    double c_b = 0.0;
    double delta = 0.0;
    double C_fit = 0.0;
};

ExponentSet exponents_from_fit(Base b, double C_fit, const Rational& alpha = {}, double c_b = 0.0);

// ---- L1 ----------------------------------------------------------------

struct L1Result {
    int k = 0;
    std::vector<Frequency> thetas;
    std::vector<double> lhs;  // sum_a |F(theta + a/b^k)| per theta
    double lhs_max = 0.0;
    double C_k = 0.0;  // lhs_max^(1/k) / (b log b)
};

// theta = j/(count b^k), 0 <= j < count. The L1 sum is 1/b^k-periodic and,
// for the transforms here, peaks at the half period, which an even count hits.
std::vector<Frequency> l1_theta_samples(Base b, int k, std::size_t count);

// Needs b^k <= 10^7 and at least 10 thetas including theta = 0.
L1Result verify_l1(const DigitConstraint& c, Base b, int k, const std::vector<Frequency>& thetas);

struct L1Sweep {
    std::vector<L1Result> per_k;
    double C_min = 0.0;
    double C_max = 0.0;
};

L1Sweep l1_sweep(const DigitConstraint& c, Base b, const std::vector<int>& ks, std::size_t theta_count);

// ---- large sieve ---------------------------------------------------------

inline constexpr int kSupGridPoints = 32;

struct LargeSieveResult {
    i64 D = 0;
    std::size_t fractions = 0;
    double lhs = 0.0;
    double rhs = 0.0;  // (D^2 + b^k) (C log b)^k
    double ratio = 0.0;
    double grid_part = 0.0;        // sum of the sampled maxima
    double correction_part = 0.0;  // sum of the derivative corrections
};

// sum_{D <= d < 2D} sum_{0<ell<d, (ell,d)=1} sup_{|eps| < 1/(10 D^2)} |F(ell/d + theta + eps)|.
// The sup is the max over eps = 0 and kSupGridPoints evenly spaced points,
// plus min(h/2 * max|F'|, max|F|) with h the grid step, so the estimate
// overshoots the sampled sup by at most 2x. It is an estimate, not a bound.
LargeSieveResult verify_large_sieve(const DigitConstraint& c, Base b, int k, i64 D, const Frequency& theta, double C);

// ---- hybrid -------------------------------------------------------------

struct HybridResult {
    i64 D = 0;
    double B = 0.0;
    std::size_t terms = 0;
    double lhs = 0.0;
    double rhs_power = 0.0;   // (b-1)^k (D^2 B)^alpha_b, or b^k (D^2 B)^beta_b
    double rhs_linear = 0.0;  // D^2 B (C log b)^k
    double rhs = 0.0;
    double ratio = 0.0;
    std::string dominant;
    double realized_exponent = 0.0;  // log2(lhs(D, 2B) / lhs(D, B))
    ExponentSet exponents;
};

// sum_{d ~ D} sum_{ell<d, (ell,d)=1} sum_{|eta|<B, b^k ell/d + eta in Z} |F(ell/d + eta/b^k)|,
// read off the full spectrum. DigitSumResidue constraints use the character
// transform with beta_b and b^k in place of alpha_b and (b-1)^k.
HybridResult verify_hybrid(const DigitConstraint& c, Base b, int k, i64 D, double B, double C);

// Same sum from a precomputed spectrum of length b^k.
double hybrid_lhs(const std::vector<Amplitude>& spectrum, i64 D, double B, std::size_t* terms = nullptr);

// ---- L-infinity -----------------------------------------------------------

struct LinfRationalResult {
    i64 ell = 0;
    i64 d = 1;
    double eps = 0.0;
    double value = 0.0;    // |1_B-hat(ell/d + eps)|
    double trivial = 0.0;  // (b-1)^k
    double c_empirical = 0.0;  // -log(value/trivial) * log(d) / k
    bool passed = false;       // c_empirical > 0
};

// Hypotheses: d < b^(k/3), some prime factor of d does not divide b,
// |eps| < 1/(2 b^(2k/3)), gcd(ell, d) = 1. A violated hypothesis throws
// PreconditionError naming it.
LinfRationalResult verify_linf_rational(const DigitConstraint& c, Base b, int k, i64 ell, i64 d, double eps);

struct LinfCharacterResult {
    Rational alpha;
    std::size_t grid = 0;
    std::size_t checked = 0;
    double bound = 0.0;        // b^k exp(-k ||(b-1)alpha||^2 / (4 b^3))
    double stated_bound = 0.0; // b^(k(1 - delta)), implied constant 1; informational
    double max_value = 0.0;
    double argmax_theta = 0.0;
    std::size_t violations = 0;
    std::size_t above_stated = 0;
    std::optional<double> first_violation;
    bool passed() const { return violations == 0; }
};

// |g-hat(theta)| <= b^k exp(-k ||(b-1)alpha||^2/(4 b^3)) at theta = g/grid and
// at the shifted points (g + phi)/grid, phi = (sqrt 5 - 1)/2. The shifted pass
// matters: for even b and alpha = 1/2, g-hat vanishes on the aligned points.
LinfCharacterResult verify_linf_character(Base b, int k, const Rational& alpha, std::size_t grid);

// ---- single-digit inequalities ----------------------------------------------

struct InequalityCheck {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::optional<std::string> first_violation;
    bool passed() const { return violations == 0; }
};

struct SingleDigitReport {
    int b = 0;
    std::size_t grid_size = 0;
    // pair: 2 + 2cos(2 pi theta) <= 4 exp(-2||theta||^2)
    // envelope: b - 3 + 2exp(-||theta||^2) <= (b-1) exp(-||theta||^2/b)
    // chaining: ||theta + alpha|| + ||b theta + alpha|| >= ||(b-1)alpha||/b
    std::vector<InequalityCheck> asserted;
    // digit_set: |sum_{n<b, n != a0} e(n theta)| <= (b-1) exp(-||theta||^2/b)
    // for every a0. Needs two consecutive allowed digits, so b = 2 (and b = 3,
    // a0 = 1) fail; reported, not asserted.
    std::vector<InequalityCheck> diagnostics;
    bool passed() const;
};

// One-dimensional checks at theta = g/grid_size; the chaining check runs on a
// G x A grid (theta = j/G, alpha = r/A, G*A >= grid_size) in exact integer
// arithmetic. Checking ||t + alpha|| + ||b t + alpha|| for every grid t covers
// every level i, since b^i theta is again a grid point.
SingleDigitReport single_digit_inequalities(Base b, std::size_t grid_size);

// ---- exponent trend -----------------------------------------------------------

struct ExponentTrendRow {
    int b = 0;
    double C_fit = 0.0;
    double alpha_b = 0.0;
    double beta_b = 0.0;
};

// C fitted from the missing-digit (a0 = 0) L1 sums at level k for each base.
std::vector<ExponentTrendRow> exponent_trend(const std::vector<int>& bases, int k, std::size_t theta_count);

} // namespace digitprimes

#endif // DIGITPRIMES_BOUNDS_HPP
