#ifndef DIGITPRIMES_TEST_SUPPORT_HPP
#define DIGITPRIMES_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace testing_support {

// |x - y| / max(|y|, 1): amplitudes are sums of unit vectors, so absolute
// error is the meaningful scale once |y| drops below 1.
inline double rel_err(std::complex<double> x, std::complex<double> y) {
    return std::abs(x - y) / std::max(std::abs(y), 1.0);
}

inline double rel_err(double x, double y) {
    return std::abs(x - y) / std::max(std::abs(y), 1.0);
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform01() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng());
}

} // namespace testing_support

#endif
