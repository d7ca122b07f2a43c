#include "spdcimg/arm_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {

std::size_t ArmKernel::row_index(double position) const {
  auto it = std::find(rho.begin(), rho.end(), position);
  if (it == rho.end()) throw InvalidArgument("position is not a row of this kernel");
  return static_cast<std::size_t>(it - rho.begin());
}

double arm_chain_max_phase_step(const ArmChain& chain, const Grid& grid) {
  // Plane-wave columns occupy the full band, so the check is at the grid edge.
  const double qe = grid.q_max();
  const double band = qe * qe - (qe - grid.dq()) * (qe - grid.dq());
  return envelope_steps(chain).max_distance() / (2.0 * chain.k) * band;
}

ArmKernel build_arm_kernel(const ArmChain& chain, std::span<const double> rho, const Grid& q_grid) {
  if (chain.has_aperture()) throw UnsupportedElement("apertures are not supported inside arm chains");
  if (!(chain.k > 0.0)) throw InvalidArgument("arm chain needs a positive wavenumber");
  for (const auto& e : chain.elements) validate(e);
  const double step = arm_chain_max_phase_step(chain, q_grid);
  if (step >= kPi) {
    std::ostringstream msg;
    msg << "arm chain is undersampled on this grid (edge phase step " << step
        << " rad >= pi); increase n*dx^2 by a factor of at least " << step / kPi;
    throw SamplingError(msg.str());
  }

  ArmKernel kernel{std::vector<double>(rho.begin(), rho.end()), q_grid, chain.k, {}};
  const std::size_t n = q_grid.size();
  const std::size_t rows = rho.size();
  kernel.h.assign(rows * n, cplx{0.0, 0.0});

  const auto cols = static_cast<long long>(n);
#if defined(SPDCIMG_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long jj = 0; jj < cols; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double qj = q_grid.q(j);
    SampledField wave(q_grid, Domain::position, chain.k);
    for (std::size_t m = 0; m < n; ++m) wave.values[m] = std::polar(1.0, qj * q_grid.x(m));
    TrackedField tracked(std::move(wave));
    tracked.check_sampling = false;
    tracked = propagate_chain(std::move(tracked), chain);
    const ComplexVector column = tracked.evaluate(kernel.rho);
    for (std::size_t i = 0; i < rows; ++i) kernel.h[i * n + j] = column[i];
  }
  return kernel;
}

}  // namespace spdcimg
