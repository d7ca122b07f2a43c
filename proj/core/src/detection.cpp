#include "spdcimg/detection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spdcimg/error.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

void require_increasing(std::span<const double> x) {
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw InvalidArgument("sample positions must be strictly increasing");
  }
}

// Integral of the piecewise-linear interpolant from x.front() to t.
class Antiderivative {
 public:
  Antiderivative(std::span<const double> x, std::span<const double> y) : x_(x), y_(y), prefix_(x.size(), 0.0) {
    for (std::size_t i = 1; i < x.size(); ++i) prefix_[i] = prefix_[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  }

  double operator()(double t) const {
    if (t <= x_.front()) return 0.0;
    if (t >= x_.back()) return prefix_.back();
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double s = t - x_[i];
    const double slope = (y_[i + 1] - y_[i]) / h;
    return prefix_[i] + y_[i] * s + 0.5 * slope * s * s;
  }

 private:
  std::span<const double> x_;
  std::span<const double> y_;
  std::vector<double> prefix_;
};

}  // namespace

std::vector<double> integrate_slit(std::span<const double> x, std::span<const double> profile, double slit_width) {
  if (x.size() != profile.size()) throw InvalidArgument("integrate_slit: x and profile sizes differ");
  if (x.size() < 2) throw InvalidArgument("integrate_slit: need at least two samples");
  if (slit_width < 0.0) throw InvalidArgument("slit width must be non-negative");
  require_increasing(x);
  if (slit_width == 0.0) return {profile.begin(), profile.end()};
  const Antiderivative F(x, profile);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = (F(x[i] + 0.5 * slit_width) - F(x[i] - 0.5 * slit_width)) / slit_width;
  }
  return out;
}

std::vector<double> add_poisson_noise(std::span<const double> rates, double mean_counts, std::uint64_t seed) {
  if (!(mean_counts > 0.0)) throw InvalidArgument("mean_counts must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> out(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 0.0) throw InvalidArgument("rates must be non-negative");
    const double mean = rates[i] * mean_counts;
    if (mean == 0.0) continue;
    std::poisson_distribution<long long> draw(mean);
    out[i] = static_cast<double>(draw(rng));
  }
  return out;
}

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one point");
  const auto n = static_cast<std::size_t>(points);
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double t = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * t * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes[i] = -0.5 * t;
    rule.nodes[n - 1 - i] = 0.5 * t;
    rule.weights[i] = rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::vector<double> interpolate_linear(std::span<const double> x, std::span<const double> y,
                                       std::span<const double> xq) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("interpolate_linear: bad table");
  require_increasing(x);
  std::vector<double> out(xq.size(), 0.0);
  for (std::size_t i = 0; i < xq.size(); ++i) {
    const double t = xq[i];
    if (t < x.front() || t > x.back()) continue;
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t j = it == x.end() ? x.size() - 2 : static_cast<std::size_t>(it - x.begin()) - 1;
    const double s = (t - x[j]) / (x[j + 1] - x[j]);
    out[i] = y[j] + s * (y[j + 1] - y[j]);
  }
  return out;
}

}  // namespace spdcimg
