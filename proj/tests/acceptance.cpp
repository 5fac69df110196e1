// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "digitprimes/counting.hpp"
#include "digitprimes/report.hpp"
#include "test_support.hpp"

using namespace digitprimes;
using testing_support::rel_err;

namespace {

struct Verdict {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::mt19937_64 gen(20240917);

double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen); }

// A random frequency: half exact rationals with small offsets, half reals.
Frequency random_theta() {
    if (gen() % 2 == 0) return Frequency::real(uniform01());
    const i64 den = 1 + static_cast<i64>(gen() % 1000);
    const i64 num = static_cast<i64>(gen() % static_cast<u64>(den));
    return Frequency{num, den, (uniform01() - 0.5) * 1e-4};
}

std::vector<DigitConstraint> constraints_for(int b, int k) {
    std::vector<DigitConstraint> out;
    for (int a0 = 0; a0 < b; a0 += std::max(1, b / 3)) out.push_back(DigitConstraint::missing_digit(a0));
    for (i64 m : {2, 3, 7}) {
        if (gcd(m, b - 1) != 1) continue;
        for (i64 j = 1; j < m; ++j) out.push_back(DigitConstraint::digit_sum_residue(m, 0, j));
    }
    out.push_back(DigitConstraint::prescribed({{0, 1}}));
    if (k >= 2) out.push_back(DigitConstraint::prescribed({{0, b - 1}, {k - 1, 0}}));
    return out;
}

Verdict criterion1() {
    double worst = 0.0;
    std::size_t evaluations = 0;
    for (int b : {2, 3, 10}) {
        for (int k = 1; k <= 4; ++k) {
            for (const auto& c : constraints_for(b, k)) {
                for (int i = 0; i < 100; ++i) {
                    const auto theta = random_theta();
                    const auto fast = fourier_eval(c, theta, Base{b}, k);
                    const auto slow = naive_fourier_oracle(c, theta, Base{b}, k);
                    worst = std::max(worst, rel_err(fast, slow));
                    ++evaluations;
                }
            }
        }
    }
    return {worst <= 1e-9, fmt("%zu evaluations, max rel err %.3g", evaluations, worst)};
}

Verdict criterion2(const PrimeTable& table) {
    double worst = 0.0;
    std::size_t checks = 0;
    auto run = [&](int b, int k, const DigitConstraint& c) {
        const auto r = inversion_identity_check(c, Base{b}, k, table);
        worst = std::max(worst, r.rel_err);
        ++checks;
    };
    for (const auto& c : {DigitConstraint::missing_digit(7), DigitConstraint::missing_digit(0),
                          DigitConstraint::digit_sum_residue(7, 3, 0), DigitConstraint::prescribed({{0, 3}, {3, 9}})}) {
        run(10, 4, c);
    }
    for (const auto& c : {DigitConstraint::missing_digit(0), DigitConstraint::missing_digit(1),
                          DigitConstraint::digit_sum_residue(3, 1, 0), DigitConstraint::prescribed({{0, 1}, {13, 1}})}) {
        run(2, 14, c);
    }
    return {worst <= 1e-6, fmt("%zu identities, max rel err %.3g", checks, worst)};
}

Verdict criterion3(const PrimeTable& table) {
    double worst = 0.0;
    for (i64 m : {2, 7}) {
        for (i64 a = 0; a < m; ++a) {
            const auto r = digit_sum_character_decomposition(Base{10}, 4, m, a, table);
            const double oracle =
                count_constrained_primes(DigitConstraint::digit_sum_residue(m, a, 0), Base{10}, 4, true, table);
            worst = std::max(worst, std::abs(r.total - oracle) / oracle);
        }
    }
    return {worst <= 1e-6, fmt("m in {2,7}, every residue, max rel err %.3g", worst)};
}

Verdict criterion4(const PrimeTable& table) {
    EstimateConfig cfg;
    cfg.weighted = true;
    const auto r = estimate_count(DigitConstraint::missing_digit(7), Base{10}, 7, cfg, &table);
    const double expected = 5.0 / 6.0 * std::pow(9.0, 7);
    const bool prediction_ok = rel_err(r.prediction, expected) <= 1e-12;
    const bool ok = prediction_ok && r.ratio && *r.ratio >= 0.90 && *r.ratio <= 1.10;
    return {ok, fmt("prediction %.1f, oracle %.4f, ratio %.12f", r.prediction, r.oracle.value_or(NAN),
                    r.ratio.value_or(NAN))};
}

Verdict criterion5(const PrimeTable& table) {
    const u64 pi = table.count_below(10'000'000);
    const double even =
        count_constrained_primes(DigitConstraint::digit_sum_residue(2, 0, 0), Base{10}, 7, false, table);
    const double odd = count_constrained_primes(DigitConstraint::digit_sum_residue(2, 1, 0), Base{10}, 7, false, table);
    const double gap = std::abs(even - odd);
    const bool ok = pi == 664579 && even + odd == static_cast<double>(pi) && gap <= 0.02 * static_cast<double>(pi);
    return {ok, fmt("pi(10^7) = %llu, even %.0f, odd %.0f, gap %.0f <= %.2f", static_cast<unsigned long long>(pi), even,
                    odd, gap, 0.02 * static_cast<double>(pi))};
}

Verdict criterion6() {
    const auto r = verify_linf_character(Base{10}, 10, Rational{1, 2}, 10'000);
    return {r.passed() && r.checked >= 10'000,
            fmt("%zu points, %zu violations, max %.4g vs bound %.6g", r.checked, r.violations, r.max_value, r.bound)};
}

Verdict criterion7() {
    bool ok = true;
    std::string detail;
    for (int b : {2, 10}) {
        const auto r = single_digit_inequalities(Base{b}, 100'000);
        std::size_t violations = 0, checked = 0;
        for (const auto& c : r.asserted) {
            violations += c.violations;
            checked += c.checked;
        }
        std::size_t diag = 0;
        for (const auto& c : r.diagnostics) diag += c.violations;
        ok = ok && r.passed() && r.asserted.size() == 3;
        detail += fmt("b=%d: %zu checks, %zu violations (digit-set diagnostic %zu); ", b, checked, violations, diag);
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

Verdict criterion8() {
    std::size_t bad = 0;
    for (int i = 0; i < 10'000; ++i) {
        const double alpha = uniform01();
        const i64 d0 = 1 + static_cast<i64>(gen() % 1'000'000);
        const auto r = dirichlet_approx(Frequency::real(alpha), d0);
        const long double gap = std::fabs(static_cast<long double>(alpha) - static_cast<long double>(r.ell) / r.d);
        const bool ok = r.d >= 1 && r.d <= d0 && gap < 1.0L / (static_cast<long double>(r.d) * d0);
        bad += ok ? 0 : 1;
    }
    return {bad == 0, fmt("10000 pairs, %zu violations", bad)};
}

Verdict criterion9() {
    const auto c = DigitConstraint::missing_digit(7);
    const auto sweep = l1_sweep(c, Base{10}, {2, 3, 4, 5}, 16);
    const double spread = sweep.C_max / sweep.C_min;
    bool bounded = true;
    double worst = 0.0;
    for (int k = 2; k <= 5; ++k) {
        const double bound = std::pow(sweep.C_max * 10 * std::log(10.0), k);
        std::vector<Frequency> thetas{Frequency{}};
        for (int i = 0; i < 16; ++i) thetas.push_back(Frequency::real(uniform01()));
        const auto r = verify_l1(c, Base{10}, k, thetas);
        bounded = bounded && r.lhs_max <= bound;
        worst = std::max(worst, r.lhs_max / bound);
        bounded = bounded && sweep.per_k[k - 2].lhs_max <= bound;
    }
    std::string ck;
    for (const auto& r : sweep.per_k) ck += fmt("%.4f ", r.C_k);
    return {spread < 2.0 && bounded,
            fmt("C_k = %sspread %.4f, fresh-theta max lhs/bound %.4f", ck.c_str(), spread, worst)};
}

Verdict criterion10(const PrimeTable& table) {
    bool ok = true;
    std::string detail;
    for (auto which : {VinogradovLemma::Equidistribution, VinogradovLemma::PrimeSum}) {
        const auto small = fit_vinogradov_constants(make_vinogradov_grid(which, 100, 1'000'000, 7), table);
        const auto large = fit_vinogradov_constants(make_vinogradov_grid(which, 200, 1'000'000, 7), table);
        std::size_t nonfinite = 0;
        for (const auto* f : {&small, &large}) {
            for (const auto& r : f->rows) nonfinite += std::isfinite(r.ratio) ? 0 : 1;
        }
        const double change = std::max(small.fitted_constant, large.fitted_constant) /
                              std::min(small.fitted_constant, large.fitted_constant);
        ok = ok && change < 2.0 && nonfinite == 0 && small.rows.size() == 100 && large.rows.size() == 200;
        detail += fmt("%s: %.4g -> %.4g (x%.3f), %zu non-finite; ", to_string(which).c_str(), small.fitted_constant,
                      large.fitted_constant, change, nonfinite);
    }
    detail.resize(detail.size() - 2);
    return {ok, detail};
}

} // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, double limit_s, const std::function<Verdict()>& body) {
        Stopwatch sw;
        Verdict v;
        try {
            v = body();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double t = sw.seconds();
        if (limit_s > 0 && t >= limit_s) {
            v.passed = false;
            v.detail += fmt("; runtime %.2f s over the %.0f s limit", t, limit_s);
        }
        std::printf("criterion %2d: %s  %s  [%.2f s]\n", id, v.passed ? "PASS" : "FAIL", v.detail.c_str(), t);
        std::fflush(stdout);
        failures += v.passed ? 0 : 1;
    };

    Stopwatch sieve_clock;
    const PrimeTable table = sieve_primes(10'000'000);
    const double sieve_s = sieve_clock.seconds();

    report(1, 10, criterion1);
    report(2, 30, [&] { return criterion2(table); });
    report(3, 0, [&] { return criterion3(table); });
    // The runtime limit for the estimate includes the sieve.
    report(4, 60 - sieve_s, [&] { return criterion4(table); });
    report(5, 0, [&] { return criterion5(table); });
    report(6, 0, criterion6);
    report(7, 0, criterion7);
    report(8, 0, criterion8);
    report(9, 0, criterion9);
    report(10, 0, [&] { return criterion10(table); });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
