#include "doctest.h"

#include <cmath>
#include <sstream>

#include "digitprimes/error.hpp"
#include "digitprimes/expsums.hpp"
#include "test_support.hpp"

using namespace digitprimes;
using testing_support::rel_err;
using testing_support::uniform01;

namespace {

const PrimeTable& table() {
    static const PrimeTable t = sieve_primes(1'000'001);
    return t;
}

// Independent oracle: trial-division Lambda and long double phases.
Amplitude lambda_hat_oracle(long double theta, u64 x) {
    long double re = 0, im = 0;
    for (u64 n = 2; n < x; ++n) {
        auto f = factorize(n);
        if (f.size() != 1) continue;
        long double lp = std::log(static_cast<long double>(f[0].p));
        long double t = theta * static_cast<long double>(n);
        t -= std::floor(t);
        re += lp * std::cos(2 * 3.14159265358979323846264338327950288L * t);
        im += lp * std::sin(2 * 3.14159265358979323846264338327950288L * t);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

} // namespace

TEST_CASE("lambda_hat examples") {
    const double psi10 = 3 * std::log(2.0) + 2 * std::log(3.0) + std::log(5.0) + std::log(7.0);
    CHECK(lambda_hat(Frequency{}, 10, table()).real() == doctest::Approx(psi10).epsilon(1e-14));
    auto half = lambda_hat(Frequency::rational(1, 2), 10, table());
    CHECK(half.real() == doctest::Approx(2 * 3 * std::log(2.0) - psi10).epsilon(1e-14));
    CHECK(std::abs(half.imag()) < 1e-12);
    CHECK(lambda_hat(Frequency::rational(1, 1), 1000, table()) == lambda_hat(Frequency{}, 1000, table()));
    CHECK_THROWS_AS(lambda_hat(Frequency{}, 2'000'000, table()), PreconditionError);
}

TEST_CASE("lambda_hat against the trial-division oracle") {
    for (int i = 0; i < 20; ++i) {
        double t = uniform01();
        u64 x = 2 + static_cast<u64>(uniform01() * 5000);
        CHECK(rel_err(lambda_hat(Frequency::real(t), x, table()), lambda_hat_oracle(t, x)) < 1e-9);
    }
}

TEST_CASE("lambda_hat invariants") {
    const u64 x = 100'000;
    const double psi = table().psi_below(x);
    for (int i = 0; i < 50; ++i) {
        auto theta = Frequency{static_cast<i64>(uniform01() * 997), 997, 1e-3 * (uniform01() - 0.5)};
        auto z = lambda_hat(theta, x, table());
        CHECK(std::abs(z) <= psi * (1 + 1e-12));
        auto w = lambda_hat(-theta, x, table());
        CHECK(rel_err(w, std::conj(z)) < 1e-12);
        CHECK(lambda_hat(theta + Frequency::rational(1, 1), x, table()) == z);
    }
}

TEST_CASE("lambda_hat_spectrum") {
    auto spec = lambda_hat_spectrum(Base{2}, 4, table());
    REQUIRE(spec.size() == 16);
    CHECK(spec[0].real() == doctest::Approx(table().psi_below(16)));
    CHECK(rel_err(spec[8], lambda_hat(Frequency::rational(1, 2), 16, table())) < 1e-12);

    for (auto [b, k] : {std::pair{10, 5}, std::pair{3, 9}, std::pair{2, 17}}) {
        auto s = lambda_hat_spectrum(Base{b}, k, table());
        const auto n = static_cast<i64>(s.size());
        CHECK(s[0].real() == doctest::Approx(table().psi_below(static_cast<u64>(n))));
        for (int i = 0; i < 25; ++i) {
            auto a = static_cast<i64>(uniform01() * static_cast<double>(n));
            auto direct = lambda_hat(Frequency::rational(a, n), static_cast<u64>(n), table());
            INFO("b=", b, " k=", k, " a=", a);
            CHECK(rel_err(s[static_cast<std::size_t>(a)], direct) < 1e-7);
            if (a > 0) CHECK(rel_err(s[static_cast<std::size_t>(n - a)], std::conj(s[static_cast<std::size_t>(a)])) < 1e-9);
        }
    }
    CHECK_THROWS_AS(lambda_hat_spectrum(Base{10}, 7, table()), PreconditionError);
    CHECK_THROWS_AS(lambda_hat_spectrum(Base{10}, 9, table()), ResourceError);
}

TEST_CASE("equidistribution_sum examples") {
    CHECK(equidistribution_sum(2, 10, Frequency::rational(1, 2)) == doctest::Approx(12.0));
    CHECK(equidistribution_sum(3, 100, Frequency::rational(1, 3)) == doctest::Approx(106.0));
    CHECK(equidistribution_sum(5, 1, Frequency::real(0.123)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(equidistribution_sum(0, 1, Frequency{}), PreconditionError);
    CHECK_THROWS_AS(equidistribution_sum(1, 0.5, Frequency{}), PreconditionError);

    auto golden = Frequency::real((std::sqrt(5.0) - 1) / 2);
    double a = equidistribution_sum(100'000, 1000, golden);
    double b = equidistribution_sum(100'000, 1000, golden);
    CHECK(std::isfinite(a));
    CHECK(a == b);
    LemmaParams p{100'000, 1000, 0, 0, 1, golden.value()};
    CHECK(std::isfinite(a / lemma_rhs(VinogradovLemma::Equidistribution, p)));
}

TEST_CASE("equidistribution_sum against a rational-arithmetic oracle") {
    for (int i = 0; i < 30; ++i) {
        i64 d = 2 + static_cast<i64>(uniform01() * 500);
        i64 a = static_cast<i64>(uniform01() * static_cast<double>(d));
        i64 n_max = 1 + static_cast<i64>(uniform01() * 3000);
        double m = 1 + uniform01() * 200;
        double expected = 0;
        for (i64 n = 1; n <= n_max; ++n) {
            i64 r = (a * n) % d;
            i64 dist = std::min(r, d - r);
            expected += dist == 0 ? m : std::min(m, static_cast<double>(d) / static_cast<double>(dist));
        }
        CHECK(equidistribution_sum(n_max, m, Frequency::rational(a, d)) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("lemma_rhs examples") {
    LemmaParams p1{100, 10, 0, 1, 3, 1e-4};
    double expected = (100 + 100 * 10 * 3 * 1e-4 + 1 / (3 * 1e-4) + 3) * std::log(100.0);
    CHECK(lemma_rhs(VinogradovLemma::Equidistribution, p1) == doctest::Approx(expected));
    CHECK(lemma_rhs(VinogradovLemma::Equidistribution, p1) == doctest::Approx(15826.3).epsilon(1e-5));

    LemmaParams p2{0, 0, 1'000'000, 1, 10, 1e-8};
    double l = std::log(1e6);
    double e2 = (std::pow(10, 4.8) + 1e3 / std::pow(10, -3.5) + 1e6 * std::pow(10, -3.5)) * l * l * l * l;
    CHECK(lemma_rhs(VinogradovLemma::PrimeSum, p2) == doctest::Approx(e2));

    const i64 n = 1000;
    LemmaParams p3{n, 1, 0, 0, 1, 1.0 / (2 * n)};
    CHECK(lemma_rhs(VinogradovLemma::Equidistribution, p3) ==
          doctest::Approx((n + 0.5 + 2.0 * n + 1) * std::log(1000.0)));

    LemmaParams zero{100, 10, 100, 0, 1, 0.0};
    CHECK(std::isinf(lemma_rhs(VinogradovLemma::Equidistribution, zero)));
    CHECK(std::isinf(lemma_rhs(VinogradovLemma::PrimeSum, zero)));
}

TEST_CASE("bound fit bookkeeping") {
    BoundFit fit;
    add_row(fit, {}, 1.0, 2.0);
    add_row(fit, {}, 3.0, 2.0);
    add_row(fit, {}, 1.0, std::numeric_limits<double>::infinity());
    add_row(fit, {}, 1.0, 0.0);
    finalize(fit);
    CHECK(fit.rows.size() == 2);
    CHECK(fit.warnings.size() == 2);
    CHECK(fit.fitted_constant == doctest::Approx(1.5));
    CHECK(fit.median_ratio == doctest::Approx(1.0));

    std::ostringstream os;
    write_fit_csv(os, fit);
    CHECK(os.str().rfind("n,m,x,ell,d,beta,lhs,rhs,ratio\n", 0) == 0);
}

TEST_CASE("vinogradov grids") {
    auto small = make_vinogradov_grid(VinogradovLemma::PrimeSum, 60, 1'000'000, 7);
    auto big = make_vinogradov_grid(VinogradovLemma::PrimeSum, 120, 1'000'000, 7);
    for (const auto& p : small.points) {
        bool found = false;
        for (const auto& q : big.points) {
            found = found || (p.x == q.x && p.d == q.d && p.ell == q.ell && p.beta == q.beta && p.m == q.m);
        }
        CHECK(found);
    }
    CHECK(small.points.size() == 60);
    CHECK_THROWS_AS(make_vinogradov_grid(VinogradovLemma::PrimeSum, 50, 1'000'000, 7), PreconditionError);
    for (const auto& p : big.points) {
        CHECK(gcd(p.ell, p.d) == 1);
        CHECK(std::abs(p.beta) < 1.0 / (static_cast<double>(p.d) * static_cast<double>(p.d)));
        CHECK(p.beta != 0.0);
        CHECK(p.x <= 1'000'000);
    }
    CHECK_THROWS_AS(fit_vinogradov_constants(VinogradovGrid{}, table()), PreconditionError);
}

TEST_CASE("vinogradov fits are finite and stable under grid doubling") {
    for (auto which : {VinogradovLemma::Equidistribution, VinogradovLemma::PrimeSum}) {
        auto fit = fit_vinogradov_constants(make_vinogradov_grid(which, 100, 1'000'000, 11), table());
        auto fit2 = fit_vinogradov_constants(make_vinogradov_grid(which, 200, 1'000'000, 11), table());
        INFO(to_string(which), " C=", fit.fitted_constant, " C2=", fit2.fitted_constant);
        CHECK(fit.rows.size() == 100);
        for (const auto& r : fit2.rows) {
            CHECK(std::isfinite(r.ratio));
            CHECK(r.ratio <= fit2.fitted_constant);
        }
        CHECK(fit.fitted_constant >= fit.median_ratio);
        CHECK(fit2.fitted_constant / fit.fitted_constant < 2.0);
        if (which == VinogradovLemma::Equidistribution) CHECK(fit2.fitted_constant < 20.0);
    }
}

TEST_CASE("restricted grids stay under the full-grid constant") {
    auto grid = make_vinogradov_grid(VinogradovLemma::PrimeSum, 100, 1'000'000, 3);
    auto full = fit_vinogradov_constants(grid, table());
    VinogradovGrid sub{VinogradovLemma::PrimeSum, {}, 0, 1'000'000};
    for (i64 d = 1000; d <= 10'000; d += 1500) {
        LemmaParams p;
        p.x = 1'000'000;
        p.d = d;
        p.ell = 1;
        p.beta = 1.0 / (static_cast<double>(d) * 1000.0);
        if (std::abs(p.beta) >= 1.0 / (static_cast<double>(d) * static_cast<double>(d))) p.beta = 0.5 / (double(d) * d);
        sub.points.push_back(p);
    }
    auto restricted = fit_vinogradov_constants(sub, table());
    INFO("full=", full.fitted_constant, " restricted=", restricted.fitted_constant);
    CHECK(restricted.fitted_constant < full.fitted_constant);
}
