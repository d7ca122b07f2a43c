#include "spdcimg/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/grid.hpp"

namespace spdcimg {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, int line, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
    throw ConfigError(line, "'" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

double parse_length(const std::string& text, int line, const std::string& key) {
  static const std::pair<const char*, double> suffixes[] = {
      {"nm", 1e9}, {"um", 1e6}, {"\xC2\xB5m", 1e6}, {"mm", 1e3}, {"cm", 1e2}, {"m", 1.0}};
  for (const auto& [suffix, divisor] : suffixes) {
    const std::string s(suffix);
    if (text.size() > s.size() && text.compare(text.size() - s.size(), s.size(), s) == 0) {
      const std::string number = trim(text.substr(0, text.size() - s.size()));
      if (number.empty()) break;
      // A trailing letter before the suffix means a unit we do not know (e.g. "km").
      if (std::isalpha(static_cast<unsigned char>(number.back()))) break;
      return parse_number(number, line, key) / divisor;
    }
  }
  if (!text.empty() && !std::isalpha(static_cast<unsigned char>(text.back()))) {
    throw ConfigError(line, "'" + key + "' needs a unit (m, cm, mm, um, nm)");
  }
  throw ConfigError(line, "'" + key + "': unrecognised length '" + text + "'");
}

std::size_t parse_count(const std::string& text, int line, const std::string& key) {
  std::size_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError(line, "'" + key + "': expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, int line, const std::string& key) {
  if (text == "true" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "no" || text == "off") return false;
  throw ConfigError(line, "'" + key + "': expected true or false");
}

std::string length_text(double meters) { return shortest(meters) + " m"; }

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return geometry.z1 == o.geometry.z1 && geometry.z2 == o.geometry.z2 && geometry.z == o.geometry.z &&
         geometry.f == o.geometry.f && pump == o.pump && object == o.object && grid == o.grid &&
         detection == o.detection && noise == o.noise;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  std::map<std::string, int> seen;  // "section.key" -> line
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool z2_given = false;

  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(line, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      static const char* known[] = {"geometry", "pump", "object", "grid", "detection", "noise"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError(line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) throw ConfigError(line, "'" + key + "' appears before any [section]");
    if (value.empty()) throw ConfigError(line, "'" + key + "' has no value");
    const std::string full = section + "." + key;
    if (seen.count(full)) throw ConfigError(line, "duplicate key '" + key + "' (first set on line " + std::to_string(seen[full]) + ")");
    seen[full] = line;

    auto unknown = [&] { throw ConfigError(line, "unknown key '" + key + "' in [" + section + "]"); };
    if (section == "geometry") {
      const double v = parse_length(value, line, key);
      if (key == "z1") c.geometry.z1 = v;
      else if (key == "z2") { c.geometry.z2 = v; z2_given = true; }
      else if (key == "z") c.geometry.z = v;
      else if (key == "f") c.geometry.f = v;
      else unknown();
    } else if (section == "pump") {
      if (key == "wavelength") c.pump.wavelength = parse_length(value, line, key);
      else if (key == "illumination") {
        if (value == "plane") c.pump.illumination = Illumination::plane;
        else if (value == "gaussian") c.pump.illumination = Illumination::gaussian;
        else throw ConfigError(line, "illumination must be plane or gaussian");
      } else if (key == "waist") c.pump.waist = parse_length(value, line, key);
      else unknown();
    } else if (section == "object") {
      if (key == "type") {
        if (value == "double_slit") c.object.kind = ObjectKind::double_slit;
        else if (value == "file") c.object.kind = ObjectKind::file;
        else throw ConfigError(line, "object type must be double_slit or file");
      } else if (key == "separation") c.object.separation = parse_length(value, line, key);
      else if (key == "width") c.object.width = parse_length(value, line, key);
      else if (key == "path") c.object.path = value;
      else unknown();
    } else if (section == "grid") {
      if (key == "n") c.grid.n = parse_count(value, line, key);
      else if (key == "dx") c.grid.dx = value == "auto" ? std::nullopt : std::optional(parse_length(value, line, key));
      else if (key == "coincidence_n") c.grid.coincidence_n = parse_count(value, line, key);
      else if (key == "coincidence_dx")
        c.grid.coincidence_dx = value == "auto" ? std::nullopt : std::optional(parse_length(value, line, key));
      else if (key == "taper") c.grid.taper = parse_number(value, line, key);
      else unknown();
    } else if (section == "detection") {
      if (key == "slit_width") c.detection.slit_width = parse_length(value, line, key);
      else if (key == "mode") {
        auto m = parse_scan_mode(value);
        if (!m || *m == ScanMode::pump_intensity) throw ConfigError(line, "unknown scan mode '" + value + "'; use fixed, fixed-idler, same or opposite");
        c.detection.mode = *m;
      } else if (key == "range") c.detection.range = parse_length(value, line, key);
      else if (key == "steps") c.detection.steps = parse_count(value, line, key);
      else if (key == "fixed") c.detection.fixed = parse_length(value, line, key);
      else unknown();
    } else if (section == "noise") {
      if (key == "enabled") c.noise.enabled = parse_bool(value, line, key);
      else if (key == "mean_counts") c.noise.mean_counts = parse_number(value, line, key);
      else if (key == "seed") c.noise.seed = parse_count(value, line, key);
      else unknown();
    }
  }

  auto at = [&](const std::string& k) {
    auto it = seen.find(k);
    return it == seen.end() ? 0 : it->second;
  };
  const auto& g = c.geometry;
  if (!seen.count("geometry.z1") || !seen.count("geometry.z")) throw ConfigError(0, "[geometry] needs z1 and z");
  if (!(g.z1 > 0.0)) throw ConfigError(at("geometry.z1"), "z1 must be positive");
  if (!(g.z > 0.0)) throw ConfigError(at("geometry.z"), "z must be positive");
  if (g.f) {
    if (*g.f == 0.0) throw ConfigError(at("geometry.f"), "ThinLens invariant violated: f must be nonzero");
    if (!z2_given) throw ConfigError(at("geometry.f"), "a lens needs its position z2");
    if (!(g.z2 > 0.0)) throw ConfigError(at("geometry.z2"), "z2 must be positive");
    if (!(g.z > g.z2)) throw ConfigError(at("geometry.z"), "z must exceed z2 (detectors beyond the lens)");
  } else if (z2_given && g.z2 < 0.0) {
    throw ConfigError(at("geometry.z2"), "z2 must be non-negative");
  }
  if (!(c.pump.wavelength > 0.0)) throw ConfigError(at("pump.wavelength"), "wavelength must be positive");
  if (!(c.pump.waist > 0.0)) throw ConfigError(at("pump.waist"), "waist must be positive");
  if (c.object.kind == ObjectKind::double_slit) {
    if (!(c.object.width > 0.0)) throw ConfigError(at("object.width"), "slit width must be positive");
    if (!(c.object.separation > c.object.width)) {
      throw ConfigError(at("object.separation"), "slit separation must exceed the slit width");
    }
  } else if (c.object.path.empty()) {
    throw ConfigError(at("object.type"), "object type file needs a path");
  }
  if (!is_power_of_two(c.grid.n) || c.grid.n < 8) throw ConfigError(at("grid.n"), "n must be a power of two >= 8");
  if (!is_power_of_two(c.grid.coincidence_n) || c.grid.coincidence_n < 8) {
    throw ConfigError(at("grid.coincidence_n"), "coincidence_n must be a power of two >= 8");
  }
  if (c.grid.dx && !(*c.grid.dx > 0.0)) throw ConfigError(at("grid.dx"), "dx must be positive");
  if (c.grid.coincidence_dx && !(*c.grid.coincidence_dx > 0.0)) {
    throw ConfigError(at("grid.coincidence_dx"), "coincidence_dx must be positive");
  }
  if (!(c.grid.taper >= 0.0 && c.grid.taper < 1.0)) throw ConfigError(at("grid.taper"), "taper must lie in [0, 1)");
  if (c.detection.slit_width < 0.0) throw ConfigError(at("detection.slit_width"), "slit_width must be non-negative");
  if (!(c.detection.range > 0.0)) throw ConfigError(at("detection.range"), "range must be positive");
  if (c.detection.steps < 2) throw ConfigError(at("detection.steps"), "steps must be at least 2");
  if (!(c.noise.mean_counts > 0.0)) throw ConfigError(at("noise.mean_counts"), "mean_counts must be positive");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[geometry]\n";
  out << "z1 = " << length_text(c.geometry.z1) << "\n";
  out << "z2 = " << length_text(c.geometry.z2) << "\n";
  out << "z = " << length_text(c.geometry.z) << "\n";
  if (c.geometry.f) out << "f = " << length_text(*c.geometry.f) << "\n";
  out << "\n[pump]\n";
  out << "wavelength = " << length_text(c.pump.wavelength) << "\n";
  out << "illumination = " << (c.pump.illumination == Illumination::plane ? "plane" : "gaussian") << "\n";
  out << "waist = " << length_text(c.pump.waist) << "\n";
  out << "\n[object]\n";
  out << "type = " << (c.object.kind == ObjectKind::double_slit ? "double_slit" : "file") << "\n";
  out << "separation = " << length_text(c.object.separation) << "\n";
  out << "width = " << length_text(c.object.width) << "\n";
  if (!c.object.path.empty()) out << "path = " << c.object.path << "\n";
  out << "\n[grid]\n";
  out << "n = " << c.grid.n << "\n";
  out << "dx = " << (c.grid.dx ? length_text(*c.grid.dx) : "auto") << "\n";
  out << "coincidence_n = " << c.grid.coincidence_n << "\n";
  out << "coincidence_dx = " << (c.grid.coincidence_dx ? length_text(*c.grid.coincidence_dx) : "auto") << "\n";
  out << "taper = " << shortest(c.grid.taper) << "\n";
  out << "\n[detection]\n";
  out << "slit_width = " << length_text(c.detection.slit_width) << "\n";
  out << "mode = " << to_string(c.detection.mode) << "\n";
  out << "range = " << length_text(c.detection.range) << "\n";
  out << "steps = " << c.detection.steps << "\n";
  out << "fixed = " << length_text(c.detection.fixed) << "\n";
  out << "\n[noise]\n";
  out << "enabled = " << (c.noise.enabled ? "true" : "false") << "\n";
  out << "mean_counts = " << shortest(c.noise.mean_counts) << "\n";
  out << "seed = " << c.noise.seed << "\n";
  return out.str();
}

PumpSpec make_pump_spec(const ExperimentConfig& c) {
  PumpSpec spec;
  spec.wavelength = c.pump.wavelength;
  if (c.pump.illumination == Illumination::gaussian) spec.illumination = GaussianBeam{c.pump.waist};
  if (c.object.kind == ObjectKind::double_slit) {
    spec.object = Mask::double_slit(c.object.separation, c.object.width);
  } else {
    std::filesystem::path p(c.object.path);
    if (p.is_relative() && !c.base_dir.empty()) p = c.base_dir / p;
    spec.object = Mask::from_file(p);
  }
  return spec;
}

}  // namespace spdcimg
