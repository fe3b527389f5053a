#ifndef NLSV_FFT_HPP
#define NLSV_FFT_HPP

#include <complex>
#include <vector>

#include "nlsv/grid.hpp"

namespace nlsv {

/// In-place unnormalized forward DFT over the full tensor grid.
void fft_forward(const Grid& grid, std::vector<std::complex<double>>& data);

/// In-place inverse DFT, normalized by 1/size so that inverse(forward(x)) = x.
void fft_inverse(const Grid& grid, std::vector<std::complex<double>>& data);

/// 1D transforms of length n on a caller-provided buffer (used by the
/// per-axis resampling passes).
void fft_forward_1d(std::size_t n, std::complex<double>* data);
void fft_inverse_1d(std::size_t n, std::complex<double>* data);

}  // namespace nlsv

#endif
