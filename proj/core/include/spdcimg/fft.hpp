#pragma once

#include <span>

#include "spdcimg/grid.hpp"

namespace spdcimg {

// Continuous-transform calibrated DFTs on a centred grid.
//
//   forward:  V(q_m) = dx * sum_j f(x_j) exp(-i q_m x_j)
//   inverse:  f(x_j) = dq/(2 pi) * sum_m V(q_m) exp(+i q_m x_j)
//
// Both are exact inverses of each other. All functions are thread-safe.

SampledField forward_spectrum(const SampledField& field);
SampledField inverse_spectrum(const SampledField& spectrum);

namespace fft {

/// Unnormalised in-place DFT of the centred sequence: out_m = sum_j in_j e^{-+2 pi i (j-n/2)(m-n/2)/n}.
/// sign = -1 forward, +1 backward.
void centered_dft(std::span<cplx> data, int sign);

/// Plain (non-centred) DFT, used for fast convolutions. Unnormalised.
void dft(std::span<cplx> data, int sign);

}  // namespace fft

}  // namespace spdcimg
