#include "spdcimg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/grid.hpp"

namespace spdcimg {
namespace {

void require_scan(const ScanResult& scan, std::size_t min_points) {
  if (scan.positions.size() != scan.rates.size()) throw InvalidArgument("scan positions and rates differ in length");
  if (scan.positions.size() < min_points) throw DomainError("scan has too few points");
}

}  // namespace

double fringe_period(const ScanResult& scan) {
  require_scan(scan, 8);
  const std::size_t n = scan.positions.size();
  const double dx = (scan.positions.back() - scan.positions.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(scan.positions[i] - scan.positions[i - 1] - dx) > 1e-6 * dx) {
      throw InvalidArgument("fringe_period needs uniformly spaced positions");
    }
  }
  const double mean = std::accumulate(scan.rates.begin(), scan.rates.end(), 0.0) / static_cast<double>(n);
  std::size_t padded = 1;
  while (padded < 16 * n) padded *= 2;
  ComplexVector data(padded, cplx{0.0, 0.0});
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    data[i] = scan.rates[i] - mean;
    spread = std::max(spread, std::abs(scan.rates[i] - mean));
  }
  if (spread <= 1e-12 * std::max(std::abs(mean), 1e-300)) throw DomainError("flat scan has no fringes");
  fft::dft(data, -1);

  std::size_t best = 1;
  for (std::size_t m = 1; m < padded / 2; ++m) {
    if (std::abs(data[m]) > std::abs(data[best])) best = m;
  }
  double offset = 0.0;
  if (best > 1 && best + 1 < padded / 2) {
    const double a = std::abs(data[best - 1]), b = std::abs(data[best]), c = std::abs(data[best + 1]);
    const double den = a - 2.0 * b + c;
    if (den != 0.0) offset = 0.5 * (a - c) / den;
  }
  const double frequency = (static_cast<double>(best) + offset) / (static_cast<double>(padded) * dx);
  const double period = 1.0 / frequency;
  const double span = dx * static_cast<double>(n - 1);
  if (span < 3.0 * period) throw DomainError("scan covers fewer than 3 fringes");
  return period;
}

double peak_separation(const ScanResult& scan) {
  require_scan(scan, 5);
  const std::size_t n = scan.rates.size();
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = scan.rates[i == 0 ? 0 : i - 1];
    const double r = scan.rates[i + 1 == n ? i : i + 1];
    s[i] = 0.25 * (l + 2.0 * scan.rates[i] + r);
  }
  const double hi = *std::max_element(s.begin(), s.end());
  if (!(hi > 0.0)) throw DomainError("scan has no peaks");
  const double half = 0.5 * hi;

  // Half-maximum regions; gaps of one or two samples are bridged.
  std::vector<std::pair<std::size_t, std::size_t>> regions;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] < half) continue;
    if (!regions.empty() && i - regions.back().second <= 3) {
      regions.back().second = i;
    } else {
      regions.emplace_back(i, i);
    }
  }
  if (regions.size() != 2) {
    throw DomainError("expected two peaks above half maximum, found " + std::to_string(regions.size()));
  }
  double centroid[2];
  for (int r = 0; r < 2; ++r) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = regions[r].first; i <= regions[r].second; ++i) {
      num += scan.rates[i] * scan.positions[i];
      den += scan.rates[i];
    }
    centroid[r] = num / den;
  }
  return std::abs(centroid[1] - centroid[0]);
}

double visibility(const ScanResult& scan) {
  require_scan(scan, 2);
  const auto [lo, hi] = std::minmax_element(scan.rates.begin(), scan.rates.end());
  if (*hi + *lo == 0.0) return 0.0;
  return (*hi - *lo) / (*hi + *lo);
}

}  // namespace spdcimg
