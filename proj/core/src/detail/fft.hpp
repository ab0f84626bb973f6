#pragma once

#include <vector>

#include "rieszlab/grid.hpp"

namespace rieszlab::detail {

// In-place unnormalized complex DFT on an n^d row-major array (sign -1 forward, +1 backward).
void fft_inplace(std::vector<cplx>& data, int d, int n, int sign);

}  // namespace rieszlab::detail
