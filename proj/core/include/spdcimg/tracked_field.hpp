#pragma once

#include <span>
#include <vector>

#include "spdcimg/elements.hpp"
#include "spdcimg/grid.hpp"

namespace spdcimg {

/// Field carried through lens systems without sampling the lens chirp.
///
/// The physical field is
///   u(x) = prefactor * exp(-i k c x^2 / 2) * g(x / scale)
/// where g is the envelope sampled on `envelope.grid` and c the wavefront
/// curvature (1/R, positive converging). A lens only changes c; free space
/// with c != 0 is mapped onto envelope propagation in rescaled coordinates,
/// so the grid follows the beam through foci and magnification.
struct TrackedField {
  SampledField envelope;
  double scale = 1.0;
  double curvature = 0.0;
  cplx prefactor{1.0, 0.0};
  /// When false, free-space steps skip the edge sampling check.
  bool check_sampling = true;

  explicit TrackedField(SampledField position_field);

  double k() const noexcept { return envelope.k; }
  /// Physical coordinate of envelope sample j.
  double position(std::size_t j) const noexcept { return scale * envelope.grid.x(j); }
  /// Physical field at envelope sample j.
  cplx value(std::size_t j) const;

  /// Physical field at arbitrary positions via band-limited interpolation of the envelope.
  ComplexVector evaluate(std::span<const double> xs) const;
};

void propagate(TrackedField& field, const FreeSpace& step);
void propagate(TrackedField& field, const ThinLens& lens);
void propagate(TrackedField& field, const Aperture& aperture);

/// Runs every element of the chain in order. The chain's k must match the field's.
TrackedField propagate_chain(TrackedField field, const ArmChain& chain);

/// Geometry of a chain as the tracked propagator sees it: the envelope
/// distance of every free-space step and the final coordinate scale.
struct EnvelopeSteps {
  std::vector<double> distances;
  double scale = 1.0;
  double max_distance() const;
};

/// Throws SamplingError when a free-space step ends exactly on a focus.
EnvelopeSteps envelope_steps(const ArmChain& chain);

/// Intensity profile sampled on the physical (scaled) grid, sorted by increasing position.
struct IntensityProfile {
  std::vector<double> x;
  std::vector<double> intensity;
};

IntensityProfile intensity_profile(const TrackedField& field);

}  // namespace spdcimg
