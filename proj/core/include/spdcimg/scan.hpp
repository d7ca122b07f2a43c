#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spdcimg {

/// Which detectors move during a scan.
///   pump_intensity    - D3 scans the pump
///   fixed_signal      - idler scans, signal held at fixed_position
///   fixed_idler       - signal scans, idler held at fixed_position
///   simultaneous_same - rho_i = rho_s = rho
///   simultaneous_opposite - rho_i = c + rho, rho_s = c - rho (c = fixed_position)
enum class ScanMode { pump_intensity, fixed_signal, fixed_idler, simultaneous_same, simultaneous_opposite };

const char* to_string(ScanMode mode) noexcept;
/// Accepts the CLI spellings: pump, fixed, fixed-idler, same, opposite.
std::optional<ScanMode> parse_scan_mode(const std::string& text);

struct NoiseSpec {
  double mean_counts = 1e4;
  std::uint64_t seed = 1;
};

struct ScanConfig {
  ScanMode mode = ScanMode::simultaneous_same;
  std::vector<double> positions;  // meters, strictly increasing
  double fixed_position = 0.0;
  double slit_width = 0.0;
  int scanned_nodes = 16;  // Gauss-Legendre nodes across a moving slit
  int fixed_nodes = 5;     // Gauss-Legendre nodes across the fixed slit
  std::optional<NoiseSpec> noise;
};

/// Detector positions and (normalised or counted) rates.
struct ScanResult {
  std::vector<double> positions;
  std::vector<double> rates;
  ScanMode mode = ScanMode::simultaneous_same;
  std::string normalization;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// `count` equally spaced positions from `from` to `to` inclusive.
std::vector<double> linspace(double from, double to, std::size_t count);

}  // namespace spdcimg
