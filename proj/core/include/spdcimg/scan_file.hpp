#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spdcimg/config.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

inline constexpr const char* kEngineVersion = "spdcimg 1.0.0";

/// Plain text: a '#'-commented header carrying the effective config, engine
/// version, mode, normalisation and metadata, then rows "position_mm rate".
/// No wall-clock stamps, so identical runs give identical bytes.
std::string format_scan_file(const ScanResult& scan, const ExperimentConfig& config);
void write_scan_file(const std::filesystem::path& path, const ScanResult& scan, const ExperimentConfig& config);

struct ScanFile {
  std::vector<std::string> header;  // without the leading "# "
  std::vector<double> positions;    // meters
  std::vector<double> rates;
};

/// Throws InvalidArgument if rows are malformed, positions not increasing or rates negative.
ScanFile read_scan_file(const std::filesystem::path& path);
ScanFile parse_scan_file(const std::string& text);

/// The config echoed in a header, parsed back.
ExperimentConfig config_from_header(const ScanFile& file);

}  // namespace spdcimg
