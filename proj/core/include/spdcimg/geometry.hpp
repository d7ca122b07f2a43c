#pragma once

#include <optional>

namespace spdcimg {

/// Distances of the setup, all in meters and measured along the beam:
/// object -> crystal (z1), crystal -> lens (z2), crystal -> detectors (z).
/// Without a lens, z2 is ignored.
struct ExperimentGeometry {
  double z1 = 0.0;
  double z2 = 0.0;
  double z = 0.0;
  std::optional<double> f;

  bool has_lens() const noexcept { return f.has_value(); }
  /// Object-lens distance O = z1 + z2.
  double object_distance() const noexcept { return z1 + z2; }
  /// Lens-detector distance I = z - z2.
  double image_distance() const noexcept { return z - z2; }
  /// |1/f - 1/O - 1/I| * f; zero at the imaging condition. Requires a lens.
  double imaging_mismatch() const;
  bool at_imaging_condition(double tol = 1e-9) const;
  /// I / O. Requires a lens.
  double magnification() const;

  /// Throws InvalidArgument if any distance is non-positive or the lens is misplaced.
  void validate() const;
};

}  // namespace spdcimg
