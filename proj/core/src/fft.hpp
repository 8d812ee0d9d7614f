#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zxi::detail {

using cplx = std::complex<double>;

// Real-to-complex forward DFT, bins 0..n/2, unnormalized.
std::vector<cplx> rfft(const std::vector<double>& x);

// Inverse of rfft for a length-n signal, scaled by 1/n.
std::vector<double> irfft(const std::vector<cplx>& X, std::size_t n);

// Angular frequency of bin k for an n-point record at spacing dt.
inline double bin_omega(std::size_t k, std::size_t n, double dt) {
    return 2.0 * 3.14159265358979323846 * static_cast<double>(k) / (static_cast<double>(n) * dt);
}

}  // namespace zxi::detail
