#ifndef DIGITPRIMES_FFT_HPP
#define DIGITPRIMES_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace digitprimes {

// Mixed-radix decimation-in-time DFT over the prime factorization of
// N = x.size():  X[a] = sum_n x[n] e(sign * n * a / N).
// Runs in O(N * sum of prime factors); a prime N degrades to O(N^2).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, int sign = +1);
std::vector<std::complex<double>> dft(std::span<const double> x, int sign = +1);

} // namespace digitprimes

#endif // DIGITPRIMES_FFT_HPP
