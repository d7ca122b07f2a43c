#include <cmath>

#include "spdcimg/error.hpp"
#include "spdcimg/geometry.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

double ExperimentGeometry::imaging_mismatch() const {
  if (!f) throw InvalidArgument("geometry has no lens");
  return std::abs(1.0 / *f - 1.0 / object_distance() - 1.0 / image_distance()) * std::abs(*f);
}

bool ExperimentGeometry::at_imaging_condition(double tol) const { return has_lens() && imaging_mismatch() <= tol; }

double ExperimentGeometry::magnification() const {
  if (!f) throw InvalidArgument("geometry has no lens");
  return image_distance() / object_distance();
}

void ExperimentGeometry::validate() const {
  if (!(z1 > 0.0)) throw InvalidArgument("z1 must be positive");
  if (!(z > 0.0)) throw InvalidArgument("z must be positive");
  if (f) {
    if (*f == 0.0 || !std::isfinite(*f)) throw InvalidArgument("ThinLens requires f != 0");
    if (!(z2 > 0.0)) throw InvalidArgument("z2 must be positive when a lens is present");
    if (!(z > z2)) throw InvalidArgument("the lens (z2) must sit between the crystal and the detectors (z)");
  }
}

const char* to_string(ScanMode mode) noexcept {
  switch (mode) {
    case ScanMode::pump_intensity: return "pump";
    case ScanMode::fixed_signal: return "fixed";
    case ScanMode::fixed_idler: return "fixed-idler";
    case ScanMode::simultaneous_same: return "same";
    case ScanMode::simultaneous_opposite: return "opposite";
  }
  return "?";
}

std::optional<ScanMode> parse_scan_mode(const std::string& text) {
  if (text == "pump") return ScanMode::pump_intensity;
  if (text == "fixed" || text == "fixed-signal") return ScanMode::fixed_signal;
  if (text == "fixed-idler") return ScanMode::fixed_idler;
  if (text == "same") return ScanMode::simultaneous_same;
  if (text == "opposite") return ScanMode::simultaneous_opposite;
  return std::nullopt;
}

std::vector<double> linspace(double from, double to, std::size_t count) {
  if (count < 2) throw InvalidArgument("linspace needs at least two points");
  std::vector<double> out(count);
  const double step = (to - from) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = from + step * static_cast<double>(i);
  out.back() = to;
  return out;
}

}  // namespace spdcimg
