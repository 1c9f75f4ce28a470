#pragma once

#include <complex>
#include <vector>

namespace shearlab {

using Complex = std::complex<double>;

/// In-place unnormalized DFT of a row-major array with the given extents.
/// sign = −1 computes Σ f e^{−2πik·j/N}, sign = +1 the conjugate kernel.
void dft_inplace(std::vector<Complex>& data, const std::vector<int>& dims, int sign);

}  // namespace shearlab
