#pragma once

#include <optional>
#include <span>

#include "spdcimg/elements.hpp"
#include "spdcimg/geometry.hpp"
#include "spdcimg/grid.hpp"
#include "spdcimg/mask.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

struct PlaneWave {};
struct GaussianBeam {
  double waist;  // 1/e amplitude radius, meters
};

struct PumpSpec {
  double wavelength = 442e-9;
  std::variant<PlaneWave, GaussianBeam> illumination = PlaneWave{};
  Mask object = Mask::unit();

  double k_pump() const;
  /// Degenerate collinear twins: k_s = k_i = k_p / 2.
  double k_twin() const { return 0.5 * k_pump(); }
};

enum class SpectrumPlane { object, crystal };

struct PumpSpectrum {
  SampledField V;
  SpectrumPlane plane = SpectrumPlane::object;
};

/// Pump amplitude right after the object, W0(x) = illumination(x) * mask(x).
/// Throws InvalidArgument when the narrowest mask feature has fewer than 8 samples.
SampledField object_field(const PumpSpec& spec, const Grid& grid);

/// Object-plane spectrum propagated over z1 to the crystal.
PumpSpectrum spectrum_at_crystal(const SampledField& object_plane_field, double z1, double k_pump);

/// Crystal-plane spectrum on a coarse engine grid. W0 is sampled on an
/// oversampled grid of the same span, transformed, cropped to the engine's
/// q window and zeroed outside the central half band; then propagated over z1.
PumpSpectrum engine_spectrum(const PumpSpec& spec, double z1, const Grid& engine_grid);

/// Chain from the object plane to D3: free z1 + z2, lens, free z - z2 (or free z1 + z when there is no lens).
ArmChain pump_chain(const ExperimentGeometry& geometry, double k_pump);

/// D3 intensity at `positions`, slit-integrated, max-normalised.
ScanResult pump_intensity_scan(const PumpSpec& spec, const ExperimentGeometry& geometry, const Grid& grid,
                               std::span<const double> positions, double slit_width);

/// Fraction of the detector-plane pump energy lying in the outer 10% of the grid on either side.
double pump_guard_band_energy(const PumpSpec& spec, const ExperimentGeometry& geometry, const Grid& grid);

}  // namespace spdcimg
