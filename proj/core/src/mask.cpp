#include "spdcimg/mask.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

// Top-hat with half transmission exactly on the edge, so that a slit whose
// edges fall on grid samples is sampled symmetrically.
double top_hat(double x, double center, double width) {
  const double d = std::abs(x - center) - 0.5 * width;
  const double tol = 1e-9 * width;
  if (d < -tol) return 1.0;
  if (d > tol) return 0.0;
  return 0.5;
}

}  // namespace

Mask::Mask(std::function<double(double)> transmission, std::string description, double min_feature)
    : transmission_(std::move(transmission)), description_(std::move(description)), min_feature_(min_feature) {}

Mask Mask::unit() { return Mask([](double) { return 1.0; }, "unit", 0.0); }

Mask Mask::double_slit(double separation, double width) {
  if (!(width > 0.0)) throw InvalidArgument("slit width must be positive");
  if (!(separation > width)) throw InvalidArgument("slit separation must exceed the slit width");
  std::ostringstream desc;
  desc << "double_slit(d=" << separation / units::um << " um, a=" << width / units::um << " um)";
  return Mask(
      [separation, width](double x) {
        return top_hat(x, -0.5 * separation, width) + top_hat(x, 0.5 * separation, width);
      },
      desc.str(), width);
}

Mask Mask::single_slit(double center, double width) {
  if (!(width > 0.0)) throw InvalidArgument("slit width must be positive");
  std::ostringstream desc;
  desc << "single_slit(c=" << center / units::um << " um, a=" << width / units::um << " um)";
  return Mask([center, width](double x) { return top_hat(x, center, width); }, desc.str(), width);
}

Mask Mask::tabulated(std::vector<double> x, std::vector<double> t, std::string description) {
  if (x.size() != t.size() || x.size() < 2) {
    throw InvalidArgument("mask table needs at least two (x, t) rows");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(t[i] >= 0.0 && t[i] <= 1.0)) {
      throw InvalidArgument("mask transmission must lie in [0, 1], row " + std::to_string(i + 1) + " has " +
                            std::to_string(t[i]));
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw InvalidArgument("mask positions must be strictly increasing (row " + std::to_string(i + 1) + ")");
    }
  }
  auto fn = [x = std::move(x), t = std::move(t)](double xq) {
    if (xq < x.front() || xq > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    if (it == x.end()) return t.back();
    const auto i = static_cast<std::size_t>(it - x.begin());
    const double w = (xq - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * t[i - 1] + w * t[i];
  };
  return Mask(std::move(fn), std::move(description), 0.0);
}

Mask Mask::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open mask file " + path.string());
  std::vector<double> x, t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double xmm = 0.0, tr = 0.0;
    if (!(ss >> xmm)) continue;
    if (!(ss >> tr)) {
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected two columns");
    }
    x.push_back(xmm * units::mm);
    t.push_back(tr);
  }
  try {
    return tabulated(std::move(x), std::move(t), "file(" + path.string() + ")");
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

}  // namespace spdcimg
