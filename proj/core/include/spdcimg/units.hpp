#pragma once

#include <numbers>

namespace spdcimg {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace units {
inline constexpr double m = 1.0;
inline constexpr double cm = 1e-2;
inline constexpr double mm = 1e-3;
inline constexpr double um = 1e-6;
inline constexpr double nm = 1e-9;
}  // namespace units

/// Vacuum wavenumber (rad/m) for a wavelength in meters.
constexpr double wavenumber(double wavelength) { return kTwoPi / wavelength; }

}  // namespace spdcimg
