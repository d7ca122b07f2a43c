#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spdcimg {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Uniform, origin-centred sampling of one transverse axis.
///
/// Sample j sits at x_j = (j - n/2) dx in position space and at
/// q_j = (j - n/2) dq in momentum space, with dq = 2 pi / (n dx).
class Grid {
 public:
  Grid(std::size_t n, double dx);

  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double dq() const noexcept { return dq_; }
  /// Total position span n*dx (the period of the discrete model).
  double span() const noexcept { return static_cast<double>(n_) * dx_; }

  double x(std::size_t j) const noexcept { return (static_cast<double>(j) - half()) * dx_; }
  double q(std::size_t j) const noexcept { return (static_cast<double>(j) - half()) * dq_; }
  /// Largest |q| on the grid (the Nyquist bin).
  double q_max() const noexcept { return half() * dq_; }

  std::vector<double> x_axis() const;
  std::vector<double> q_axis() const;

  bool operator==(const Grid& other) const noexcept { return n_ == other.n_ && dx_ == other.dx_; }

 private:
  double half() const noexcept { return static_cast<double>(n_ / 2); }

  std::size_t n_;
  double dx_;
  double dq_;
};

/// Validating factory: n must be a power of two >= 8 and dx > 0.
Grid make_grid(std::size_t n, double dx);

bool is_power_of_two(std::size_t n) noexcept;

enum class Domain { position, momentum };

const char* to_string(Domain d) noexcept;

/// Complex amplitude sampled on a grid, tagged with its domain and the photon
/// wavenumber k that governs its propagation.
struct SampledField {
  Grid grid;
  ComplexVector values;
  Domain domain = Domain::position;
  double k = 0.0;

  SampledField(Grid g, ComplexVector v, Domain d, double wavenumber);
  /// Zero field.
  SampledField(Grid g, Domain d, double wavenumber);

  std::size_t size() const noexcept { return values.size(); }
};

/// Sum |values|^2 times the measure (dx in position, dq/2pi in momentum).
double field_energy(const SampledField& f);

}  // namespace spdcimg
