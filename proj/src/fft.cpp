#include "digitprimes/fft.hpp"

#include <cmath>
#include <numbers>

#include "digitprimes/error.hpp"

namespace digitprimes {

namespace {

using cd = std::complex<double>;

// e(sign * t / N) for t in [0, N) from two sqrt(N)-sized tables.
class Twiddles {
public:
    Twiddles(std::size_t n, int sign) : n_(n) {
        block_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
        if (block_ == 0) block_ = 1;
        lo_.resize(block_);
        hi_.resize(n / block_ + 1);
        const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
        for (std::size_t t = 0; t < lo_.size(); ++t) lo_[t] = angle(two_pi * sign * t / n);
        for (std::size_t t = 0; t < hi_.size(); ++t) hi_[t] = angle(two_pi * sign * (t * block_ % n) / n);
    }

    cd operator()(std::size_t t) const {
        t %= n_;
        return hi_[t / block_] * lo_[t % block_];
    }

private:
    static cd angle(long double x) {
        return {static_cast<double>(std::cos(x)), static_cast<double>(std::sin(x))};
    }

    std::size_t n_;
    std::size_t block_;
    std::vector<cd> lo_, hi_;
};

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> f;
    for (std::size_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            f.push_back(p);
            n /= p;
        }
    }
    if (n > 1) f.push_back(n);
    return f;
}

template <typename T>
void fft_rec(const T* in, std::size_t stride, std::size_t n, cd* out, const std::vector<std::size_t>& factors,
             std::size_t fi, const Twiddles& tw, std::size_t total, std::vector<cd>& tmp) {
    if (n == 1) {
        out[0] = cd(in[0]);
        return;
    }
    const std::size_t p = factors[fi];
    const std::size_t m = n / p;
    for (std::size_t r = 0; r < p; ++r) fft_rec(in + r * stride, stride * p, m, out + r * m, factors, fi + 1, tw, total, tmp);

    // X[q + s m] = sum_r w_n^{r q} Y_r[q] w_p^{r s}
    const std::size_t step = total / n;
    const std::size_t pstep = total / p;
    cd* t = tmp.data();
    for (std::size_t q = 0; q < m; ++q) {
        t[0] = out[q];
        for (std::size_t r = 1; r < p; ++r) t[r] = out[r * m + q] * tw(r * q * step);
        for (std::size_t s = 0; s < p; ++s) {
            cd acc = t[0];
            for (std::size_t r = 1; r < p; ++r) acc += t[r] * tw((r * s % p) * pstep);
            out[q + s * m] = acc;
        }
    }
}

template <typename T>
std::vector<cd> run(std::span<const T> x, int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("dft: sign must be +1 or -1");
    const std::size_t n = x.size();
    std::vector<cd> out(n);
    if (n == 0) return out;
    const auto factors = prime_factors(n);
    std::size_t pmax = 1;
    for (auto p : factors) pmax = std::max(pmax, p);
    std::vector<cd> tmp(pmax);
    Twiddles tw(n, sign);
    fft_rec(x.data(), 1, n, out.data(), factors, 0, tw, n, tmp);
    return out;
}

} // namespace

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, int sign) {
    return run(x, sign);
}

std::vector<std::complex<double>> dft(std::span<const double> x, int sign) {
    return run(x, sign);
}

} // namespace digitprimes
