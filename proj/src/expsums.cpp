#include "digitprimes/expsums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "digitprimes/counting.hpp"
#include "digitprimes/error.hpp"
#include "digitprimes/fft.hpp"

namespace digitprimes {

namespace {

// Below this the lemmas are far from their asymptotic regime.
constexpr double kGridMinScale = 1e4;

// Four log-spaced scales in [10^4, max_scale] times these denominators,
// small ones included because the prime sum peaks near ell/d with small d.
constexpr std::size_t kGridScales = 4;
constexpr std::array<i64, 5> kGridDenominators{1, 2, 3, 31, 997};

u64 mix(u64 z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

Amplitude lambda_hat(const Frequency& theta, u64 x, const PrimeTable& table) {
    if (x > table.limit()) {
        throw PreconditionError("lambda_hat: x=" + std::to_string(x) + " exceeds the prime table limit " +
                                std::to_string(table.limit()));
    }
    long double re = 0.0L, im = 0.0L;
    table.for_each_prime_power(x, [&](u64 n, double lp) {
        Amplitude z = unit(theta.phase_of_multiple(static_cast<i64>(n)));
        re += lp * z.real();
        im += lp * z.imag();
    });
    return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<Amplitude> lambda_hat_spectrum(Base b, int k, const PrimeTable& table) {
    const u64 n = checked_power(b, k, kSpectrumLimit, "lambda_hat_spectrum");
    if (n > table.limit()) {
        throw PreconditionError("lambda_hat_spectrum: b^k exceeds the prime table limit " +
                                std::to_string(table.limit()));
    }
    auto seq = table.mangoldt_sequence(n);
    return dft(std::span<const double>(seq), +1);
}

double equidistribution_sum(i64 n_max, double m_cap, const Frequency& alpha) {
    if (n_max < 1) throw PreconditionError("equidistribution_sum: N must be >= 1");
    if (!(m_cap >= 1.0)) throw PreconditionError("equidistribution_sum: M must be >= 1");
    long double s = 0.0L;
    for (i64 n = 1; n <= n_max; ++n) {
        double dist = nearest_int_distance(alpha.phase_of_multiple(n));
        s += dist * m_cap >= 1.0 ? 1.0 / dist : m_cap;
    }
    return static_cast<double>(s);
}

std::string to_string(VinogradovLemma which) {
    return which == VinogradovLemma::Equidistribution ? "equidistribution" : "prime_sum";
}

double lemma_rhs(VinogradovLemma which, const LemmaParams& p) {
    if (p.d < 1) throw PreconditionError("lemma_rhs: d must be >= 1");
    const double d = static_cast<double>(p.d);
    const double db = d * std::abs(p.beta);
    if (which == VinogradovLemma::Equidistribution) {
        if (p.n < 1 || p.m < 1.0) throw PreconditionError("lemma_rhs: N and M must be >= 1");
        if (db == 0.0) return std::numeric_limits<double>::infinity();
        const double n = static_cast<double>(p.n);
        return (n + n * p.m * db + 1.0 / db + d) * std::log(n);
    }
    if (p.x < 2) throw PreconditionError("lemma_rhs: x must be >= 2");
    if (db == 0.0) return std::numeric_limits<double>::infinity();
    const double x = static_cast<double>(p.x);
    const double lx = std::log(x);
    return (std::pow(x, 0.8) + std::sqrt(x / db) + x * std::sqrt(db)) * lx * lx * lx * lx;
}

void add_row(BoundFit& fit, const LemmaParams& params, double lhs, double rhs) {
    if (!std::isfinite(lhs) || lhs < 0.0) throw ComputationError("bound fit: invalid lhs");
    if (!std::isfinite(rhs) || rhs <= 0.0) {
        fit.warnings.push_back("row excluded: rhs=" + std::to_string(rhs) + " at d=" + std::to_string(params.d) +
                               " beta=" + std::to_string(params.beta));
        return;
    }
    fit.rows.push_back({params, lhs, rhs, lhs / rhs});
}

void finalize(BoundFit& fit) {
    std::vector<double> ratios;
    ratios.reserve(fit.rows.size());
    for (const auto& r : fit.rows) ratios.push_back(r.ratio);
    fit.fitted_constant = 0.0;
    fit.median_ratio = 0.0;
    if (ratios.empty()) return;
    fit.fitted_constant = *std::max_element(ratios.begin(), ratios.end());
    std::sort(ratios.begin(), ratios.end());
    const auto n = ratios.size();
    fit.median_ratio = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
}

void write_fit_csv(std::ostream& os, const BoundFit& fit) {
    os << "n,m,x,ell,d,beta,lhs,rhs,ratio\n";
    os.precision(17);
    for (const auto& r : fit.rows) {
        const auto& p = r.params;
        os << p.n << ',' << p.m << ',' << p.x << ',' << p.ell << ',' << p.d << ',' << p.beta << ',' << r.lhs << ','
           << r.rhs << ',' << r.ratio << '\n';
    }
}

VinogradovGrid make_vinogradov_grid(VinogradovLemma which, std::size_t size, u64 max_scale, std::uint64_t seed) {
    if (static_cast<double>(max_scale) < kGridMinScale) {
        throw PreconditionError("vinogradov grid: max scale must be >= 10^4");
    }
    const std::size_t cells = kGridScales * kGridDenominators.size();
    if (size == 0 || size % cells != 0) {
        throw PreconditionError("vinogradov grid: size must be a positive multiple of " + std::to_string(cells));
    }
    const std::size_t levels = size / cells;
    VinogradovGrid grid{which, {}, seed, max_scale};

    const double log_lo = std::log(kGridMinScale);
    const double log_hi = std::log(static_cast<double>(max_scale));
    for (std::size_t si = 0; si < kGridScales; ++si) {
        const auto s = static_cast<u64>(
            std::llround(std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(si) / (kGridScales - 1))));
        const double log_s = std::log(static_cast<double>(s));
        for (std::size_t di = 0; di < kGridDenominators.size(); ++di) {
            const i64 d = kGridDenominators[di];
            const u64 cell_key = mix(seed ^ mix(si * 64 + di));
            i64 ell = static_cast<i64>(cell_key % static_cast<u64>(d));
            while (gcd(ell, d) != 1) ell = (ell + 1) % d;
            const double d2 = static_cast<double>(d) * static_cast<double>(d);
            for (std::size_t j = 0; j < levels; ++j) {
                // t = j/levels; t-values of a grid are contained in those of its doubling.
                const double t = static_cast<double>(j) / static_cast<double>(levels);
                const u64 level_key = mix(cell_key ^ static_cast<u64>(std::llround(t * (1 << 20))));
                LemmaParams p;
                p.n = static_cast<i64>(s);
                p.x = s;
                p.d = d;
                p.ell = ell;
                p.m = std::exp(std::log(1e4) * static_cast<double>(level_key >> 11) * 0x1.0p-53);
                // |beta| = d^-2 s^-(1-t), from 1/(d^2 s) up to below 1/d^2
                p.beta = (level_key & 1 ? -1.0 : 1.0) * std::exp(-std::log(d2) - (1.0 - t) * log_s);
                grid.points.push_back(p);
            }
        }
    }
    return grid;
}

BoundFit fit_vinogradov_constants(const VinogradovGrid& grid, const PrimeTable& table) {
    if (grid.points.empty()) throw PreconditionError("fit_vinogradov_constants: empty grid");
    BoundFit fit;
    fit.label = to_string(grid.which);
    for (const auto& p : grid.points) {
        const double d = static_cast<double>(p.d);
        if (gcd(p.ell, p.d) != 1 || !(std::abs(p.beta) < 1.0 / (d * d))) {
            throw PreconditionError("fit_vinogradov_constants: grid point violates (ell,d)=1, |beta|<1/d^2");
        }
        const double lhs = grid.which == VinogradovLemma::Equidistribution
                               ? equidistribution_sum(p.n, p.m, p.theta())
                               : std::abs(lambda_hat(p.theta(), p.x, table));
        add_row(fit, p, lhs, lemma_rhs(grid.which, p));
    }
    finalize(fit);
    return fit;
}

} // namespace digitprimes
