#pragma once

#include "wavemod/spectral.hpp"

namespace wavemod::fft {

// coefficients from physical samples: out = DFT(in) / N, supports in == out
void forward(const Grid& grid, const cplx* in, cplx* out);
// physical samples from coefficients: out(x) = sum_k in(k) exp(ikx)
void inverse(const Grid& grid, const cplx* in, cplx* out);

}  // namespace wavemod::fft
