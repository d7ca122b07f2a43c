#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "spdcimg/geometry.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

enum class Illumination { plane, gaussian };
enum class ObjectKind { double_slit, file };

struct ExperimentConfig {
  ExperimentGeometry geometry;

  struct Pump {
    double wavelength = 442e-9;
    Illumination illumination = Illumination::plane;
    double waist = 1e-3;
    bool operator==(const Pump&) const = default;
  } pump;

  struct Object {
    ObjectKind kind = ObjectKind::double_slit;
    double separation = 300e-6;
    double width = 100e-6;
    std::string path;  // two-column file, x in mm; relative to the config file
    bool operator==(const Object&) const = default;
  } object;

  struct GridSettings {
    std::size_t n = 4096;
    std::optional<double> dx;  // empty = auto
    std::size_t coincidence_n = 512;
    std::optional<double> coincidence_dx;
    double taper = 0.3;
    bool operator==(const GridSettings&) const = default;
  } grid;

  struct Detection {
    double slit_width = 0.2e-3;
    ScanMode mode = ScanMode::simultaneous_same;
    double range = 0.6e-3;  // scan runs over [-range, range]
    std::size_t steps = 101;
    double fixed = 0.0;     // fixed detector position, or the centre of an opposite scan
    bool operator==(const Detection&) const = default;
  } detection;

  struct Noise {
    bool enabled = false;
    double mean_counts = 1e4;
    std::uint64_t seed = 1;
    bool operator==(const Noise&) const = default;
  } noise;

  /// Directory relative file paths are resolved against.
  std::filesystem::path base_dir;

  bool operator==(const ExperimentConfig& other) const;
};

/// Line-oriented grammar:
///
///   # comment
///   [section]
///   key = value
///
/// Lengths need a unit suffix (m, cm, mm, um, nm). Unknown sections or keys,
/// missing units and violated invariants raise ConfigError with the line.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every field written out explicitly; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Pump spec with the mask built (or loaded) from the object section.
PumpSpec make_pump_spec(const ExperimentConfig& config);

}  // namespace spdcimg
