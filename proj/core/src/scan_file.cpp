#include "spdcimg/scan_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdcimg/error.hpp"

namespace spdcimg {
namespace {

constexpr const char* kConfigBegin = "--- config ---";
constexpr const char* kConfigEnd = "--- end config ---";

}  // namespace

std::string format_scan_file(const ScanResult& scan, const ExperimentConfig& config) {
  if (scan.positions.size() != scan.rates.size()) throw InvalidArgument("scan positions and rates differ in length");
  std::ostringstream out;
  out << "# " << kEngineVersion << "\n";
  out << "# mode = " << to_string(scan.mode) << "\n";
  out << "# normalization = " << scan.normalization << "\n";
  for (const auto& [k, v] : scan.metadata) out << "# " << k << " = " << v << "\n";
  out << "# " << kConfigBegin << "\n";
  std::istringstream cfg(serialize_config(config));
  for (std::string line; std::getline(cfg, line);) out << "# " << line << "\n";
  out << "# " << kConfigEnd << "\n";
  out << "# position_mm rate\n";
  char buf[96];
  for (std::size_t i = 0; i < scan.positions.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9f %.12e\n", scan.positions[i] * 1e3, scan.rates[i]);
    out << buf;
  }
  return out.str();
}

void write_scan_file(const std::filesystem::path& path, const ScanResult& scan, const ExperimentConfig& config) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << format_scan_file(scan, config);
}

ScanFile parse_scan_file(const std::string& text) {
  ScanFile f;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      f.header.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    std::istringstream row(line);
    double pos = 0.0, rate = 0.0;
    std::string extra;
    if (!(row >> pos >> rate) || (row >> extra)) {
      throw InvalidArgument("scan file line " + std::to_string(lineno) + ": expected two numbers");
    }
    if (rate < 0.0 || !std::isfinite(rate)) throw InvalidArgument("scan file line " + std::to_string(lineno) + ": bad rate");
    if (!f.positions.empty() && !(pos * 1e-3 > f.positions.back())) {
      throw InvalidArgument("scan file line " + std::to_string(lineno) + ": positions must increase");
    }
    f.positions.push_back(pos * 1e-3);
    f.rates.push_back(rate);
  }
  return f;
}

ScanFile read_scan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scan_file(text.str());
}

ExperimentConfig config_from_header(const ScanFile& file) {
  std::string cfg;
  bool inside = false;
  for (const auto& h : file.header) {
    if (h == kConfigBegin) { inside = true; continue; }
    if (h == kConfigEnd) break;
    if (inside) cfg += h + "\n";
  }
  if (!inside) throw InvalidArgument("scan file header carries no config");
  return parse_config(cfg);
}

}  // namespace spdcimg
