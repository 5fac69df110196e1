#ifndef DIGITPRIMES_EXPSUMS_HPP
#define DIGITPRIMES_EXPSUMS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "digitprimes/fourier.hpp"
#include "digitprimes/primes.hpp"
#include "digitprimes/rational.hpp"

namespace digitprimes {

// sum_{n<x} Lambda(n) e(n theta) by direct summation over prime powers.
Amplitude lambda_hat(const Frequency& theta, u64 x, const PrimeTable& table);

// {lambda_hat(a/b^k, b^k)}_{0 <= a < b^k} through one mixed-radix DFT.
std::vector<Amplitude> lambda_hat_spectrum(Base b, int k, const PrimeTable& table);

// sum_{n=1}^N min(M, ||alpha n||^{-1}); exact multiples contribute M.
double equidistribution_sum(i64 n_max, double m_cap, const Frequency& alpha);

enum class VinogradovLemma { Equidistribution, PrimeSum };

std::string to_string(VinogradovLemma which);

// Parameters of one grid point, theta = ell/d + beta. Equidistribution uses
// (N, M), PrimeSum uses x.
struct LemmaParams {
    i64 n = 0;
    double m = 0.0;
    u64 x = 0;
    i64 ell = 0;
    i64 d = 1;
    double beta = 0.0;

    Frequency theta() const { return Frequency{ell, d, beta}; }
};

// Bracketed right-hand side with implied constant 1. Infinite when beta = 0
// (the 1/|d beta| terms blow up).
double lemma_rhs(VinogradovLemma which, const LemmaParams& p);

struct FitRow {
    LemmaParams params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

// Empirical size of an implied constant: max and median of lhs/rhs.
struct BoundFit {
    std::string label;
    std::vector<FitRow> rows;
    std::vector<std::string> warnings;
    double fitted_constant = 0.0;
    double median_ratio = 0.0;
};

// Appends a row, or a warning when rhs is not a positive finite number.
void add_row(BoundFit& fit, const LemmaParams& params, double lhs, double rhs);

// Recomputes fitted_constant and median_ratio from the rows.
void finalize(BoundFit& fit);

// One row per grid point: "n,m,x,ell,d,beta,lhs,rhs,ratio".
void write_fit_csv(std::ostream& os, const BoundFit& fit);

struct VinogradovGrid {
    VinogradovLemma which = VinogradovLemma::Equidistribution;
    std::vector<LemmaParams> points;
    std::uint64_t seed = 0;
    u64 max_scale = 0;
};

// Product grid of 4 log-spaced scales (N or x in [10^4, max_scale]),
// d in {1, 2, 3, 31, 997} and size/20 levels of |beta| = d^-2 s^-(1-t),
// t = j/levels, so 0 < |beta| < 1/d^2. The seed picks ell coprime to d and M
// in [1, 10^4] per point. A grid of size 2n contains the grid of size n.
VinogradovGrid make_vinogradov_grid(VinogradovLemma which, std::size_t size, u64 max_scale, std::uint64_t seed);

// lhs = equidistribution_sum or |lambda_hat| at every grid point, rhs from
// lemma_rhs. Needs table.limit() >= max x for the PrimeSum lemma.
BoundFit fit_vinogradov_constants(const VinogradovGrid& grid, const PrimeTable& table);

} // namespace digitprimes

#endif // DIGITPRIMES_EXPSUMS_HPP
