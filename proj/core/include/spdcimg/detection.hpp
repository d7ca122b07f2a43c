#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace spdcimg {

/// Convolution of a sampled profile with a unit-area top-hat of the given
/// width. The profile is treated as piecewise linear and zero outside its
/// sampled range; the integral over each window is exact for that model.
std::vector<double> integrate_slit(std::span<const double> x, std::span<const double> profile, double slit_width);

/// Each rate r becomes a Poisson draw with mean r * mean_counts. Deterministic for a given seed.
std::vector<double> add_poisson_noise(std::span<const double> rates, double mean_counts, std::uint64_t seed);

/// Gauss-Legendre rule on [-1/2, 1/2], weights summing to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int points);

/// Linear interpolation of (x, y) at xq; zero outside the range.
std::vector<double> interpolate_linear(std::span<const double> x, std::span<const double> y,
                                       std::span<const double> xq);

}  // namespace spdcimg
