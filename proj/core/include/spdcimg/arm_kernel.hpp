#pragma once

#include <span>
#include <vector>

#include "spdcimg/elements.hpp"
#include "spdcimg/grid.hpp"

namespace spdcimg {

/// Plane-wave response h(rho, q') of one arm: the detector-plane amplitude
/// at rho produced by exp(i q' x) leaving the crystal.
struct ArmKernel {
  std::vector<double> rho;
  Grid q_grid;
  double k = 0.0;
  ComplexVector h;  // row-major [rho index][q' index]

  std::size_t rows() const noexcept { return rho.size(); }
  std::size_t cols() const noexcept { return q_grid.size(); }
  std::span<const cplx> row(std::size_t i) const { return {h.data() + i * cols(), cols()}; }
  cplx operator()(std::size_t i, std::size_t j) const { return h[i * cols() + j]; }
  /// Index of an exact position in `rho`; throws if absent.
  std::size_t row_index(double position) const;
};

/// Builds the kernel column by column: each column propagates the plane wave
/// exp(i q'_j x) through the chain with the tracked FFT propagator and samples
/// it at `rho`. Columns are evaluated in parallel when OpenMP is available;
/// the result is bit-identical to a serial build.
ArmKernel build_arm_kernel(const ArmChain& chain, std::span<const double> rho, const Grid& q_grid);

/// Largest edge phase step (radians) over the envelope free-space steps the
/// chain implies on this grid. Must stay below pi for a valid kernel.
double arm_chain_max_phase_step(const ArmChain& chain, const Grid& grid);

}  // namespace spdcimg
