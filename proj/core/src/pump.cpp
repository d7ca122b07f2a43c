#include "spdcimg/pump.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdcimg/detection.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

constexpr double kMinSamplesPerFeature = 8.0;
constexpr double kGuardFraction = 0.1;

double illumination_at(const PumpSpec& spec, double x) {
  if (const auto* g = std::get_if<GaussianBeam>(&spec.illumination)) {
    return std::exp(-(x * x) / (g->waist * g->waist));
  }
  return 1.0;
}

}  // namespace

double PumpSpec::k_pump() const {
  if (!(wavelength > 0.0)) throw InvalidArgument("pump wavelength must be positive");
  return wavenumber(wavelength);
}

SampledField object_field(const PumpSpec& spec, const Grid& grid) {
  const double feature = spec.object.min_feature();
  if (feature > 0.0 && feature / grid.dx() < kMinSamplesPerFeature) {
    std::ostringstream msg;
    msg << "object " << spec.object.description() << " is under-resolved: " << feature / grid.dx()
        << " samples across its narrowest feature, need >= " << kMinSamplesPerFeature << " (dx <= "
        << feature / kMinSamplesPerFeature << " m)";
    throw InvalidArgument(msg.str());
  }
  SampledField w0(grid, Domain::position, spec.k_pump());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    w0.values[j] = illumination_at(spec, x) * spec.object(x);
  }
  return w0;
}

PumpSpectrum spectrum_at_crystal(const SampledField& object_plane_field, double z1, double k_pump) {
  SampledField v = forward_spectrum(object_plane_field);
  v.k = k_pump;
  return {propagate_free(v, z1), SpectrumPlane::crystal};
}

PumpSpectrum engine_spectrum(const PumpSpec& spec, double z1, const Grid& engine_grid) {
  const std::size_t n = engine_grid.size();
  std::size_t ratio = 4;
  const double feature = spec.object.min_feature();
  if (feature > 0.0) {
    while (engine_grid.dx() / static_cast<double>(ratio) > feature / kMinSamplesPerFeature) ratio *= 2;
  }
  const Grid fine(n * ratio, engine_grid.dx() / static_cast<double>(ratio));
  const SampledField fine_spectrum = forward_spectrum(object_field(spec, fine));

  SampledField v(engine_grid, Domain::momentum, spec.k_pump());
  const std::size_t offset = (fine.size() - n) / 2;
  const std::size_t quarter = n / 4;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t dist = j > n / 2 ? j - n / 2 : n / 2 - j;
    if (dist < quarter) v.values[j] = fine_spectrum.values[j + offset];
  }
  return {propagate_free(v, z1), SpectrumPlane::crystal};
}

ArmChain pump_chain(const ExperimentGeometry& geometry, double k_pump) {
  geometry.validate();
  ArmChain chain{k_pump, {}};
  chain.elements.emplace_back(FreeSpace{geometry.z1});
  if (geometry.f) {
    chain.elements.emplace_back(FreeSpace{geometry.z2});
    chain.elements.emplace_back(ThinLens{*geometry.f});
    chain.elements.emplace_back(FreeSpace{geometry.z - geometry.z2});
  } else {
    chain.elements.emplace_back(FreeSpace{geometry.z});
  }
  return chain;
}

ScanResult pump_intensity_scan(const PumpSpec& spec, const ExperimentGeometry& geometry, const Grid& grid,
                               std::span<const double> positions, double slit_width) {
  if (slit_width < 0.0) throw InvalidArgument("slit width must be non-negative");
  const ArmChain chain = pump_chain(geometry, spec.k_pump());
  const TrackedField field = propagate_chain(TrackedField(object_field(spec, grid)), chain);
  const double limit = (0.5 - kGuardFraction) * std::abs(field.scale) * grid.span();
  for (double p : positions) {
    if (std::abs(p) + 0.5 * slit_width > limit) {
      std::ostringstream msg;
      msg << "scan position " << p << " m lies outside the guard band (|x| <= " << limit << " m)";
      throw InvalidArgument(msg.str());
    }
  }
  const IntensityProfile profile = intensity_profile(field);
  const std::vector<double> smoothed = integrate_slit(profile.x, profile.intensity, slit_width);

  ScanResult out;
  out.mode = ScanMode::pump_intensity;
  out.positions.assign(positions.begin(), positions.end());
  out.rates = interpolate_linear(profile.x, smoothed, positions);
  const double peak = *std::max_element(out.rates.begin(), out.rates.end());
  if (peak > 0.0) {
    for (auto& r : out.rates) r /= peak;
  }
  out.normalization = "max-normalised pump intensity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", field.scale);
  out.metadata.emplace_back("detector_plane_scale", buf);
  return out;
}

double pump_guard_band_energy(const PumpSpec& spec, const ExperimentGeometry& geometry, const Grid& grid) {
  const TrackedField field = propagate_chain(TrackedField(object_field(spec, grid)), pump_chain(geometry, spec.k_pump()));
  const std::size_t n = grid.size();
  const auto band = static_cast<std::size_t>(kGuardFraction * static_cast<double>(n));
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double e = std::norm(field.envelope.values[j]);
    total += e;
    if (j < band || j >= n - band) outer += e;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace spdcimg
