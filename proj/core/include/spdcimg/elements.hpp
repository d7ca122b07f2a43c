#pragma once

#include <variant>
#include <vector>

#include "spdcimg/grid.hpp"
#include "spdcimg/mask.hpp"

namespace spdcimg {

struct FreeSpace {
  double z;  // meters, > 0
};

struct ThinLens {
  double f;  // meters, != 0; positive converges
};

struct Aperture {
  Mask mask;
};

using Element = std::variant<FreeSpace, ThinLens, Aperture>;

/// Ordered optical elements traversed by one photon of wavenumber k.
struct ArmChain {
  double k = 0.0;
  std::vector<Element> elements;

  /// Sum of the free-space segment lengths.
  double total_length() const;
  bool has_aperture() const;
};

/// Throws InvalidArgument if an element violates its invariant (z <= 0, f == 0).
void validate(const Element& e);

SampledField apply_aperture(const SampledField& field, const Mask& mask);

/// Paraxial free-space propagation: spectrum multiplied by exp(-i q^2 z / (2k)).
/// Accepts either domain and returns the same domain. z may be negative
/// (back-propagation). Throws SamplingError if the transfer-function phase
/// step at the edge of the occupied band reaches pi.
SampledField propagate_free(const SampledField& field, double z);

/// Position-space lens chirp exp(-i k x^2 / (2 f)). Throws SamplingError if
/// the chirp step at the edge of the field's support reaches pi.
SampledField apply_thin_lens(const SampledField& field, double focal_length);

namespace detail {
/// propagate_free without the sampling check, for callers that validated the
/// whole chain up front.
SampledField propagate_free_unchecked(const SampledField& field, double z);
}  // namespace detail

namespace sampling {

/// |phi(u_e) - phi(u_e - du)| for phi(u) = coef u^2, where u_e is the
/// outermost sample (index-wise) holding a nonzero value.
double edge_phase_step(const ComplexVector& values, const Grid& grid, Domain axis, double coef);

/// Support edge index distance from the centre, in samples (n/2 for full support, 0 if empty).
double support_radius(const ComplexVector& values);

}  // namespace sampling

}  // namespace spdcimg
