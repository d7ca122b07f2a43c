#include "spdcimg/grid.hpp"

#include <cmath>
#include <string>

#include "spdcimg/error.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

Grid::Grid(std::size_t n, double dx) : n_(n), dx_(dx), dq_(kTwoPi / (static_cast<double>(n) * dx)) {
  if (n < 8 || !is_power_of_two(n)) {
    throw InvalidArgument("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw InvalidArgument("grid spacing must be positive, got " + std::to_string(dx));
  }
}

Grid make_grid(std::size_t n, double dx) { return Grid(n, dx); }

std::vector<double> Grid::x_axis() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::q_axis() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = q(j);
  return out;
}

const char* to_string(Domain d) noexcept { return d == Domain::position ? "position" : "momentum"; }

SampledField::SampledField(Grid g, ComplexVector v, Domain d, double wavenumber)
    : grid(g), values(std::move(v)), domain(d), k(wavenumber) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("field has " + std::to_string(values.size()) + " samples but grid has " +
                          std::to_string(grid.size()));
  }
}

SampledField::SampledField(Grid g, Domain d, double wavenumber)
    : grid(g), values(g.size(), cplx{0.0, 0.0}), domain(d), k(wavenumber) {}

double field_energy(const SampledField& f) {
  double sum = 0.0;
  for (const auto& v : f.values) sum += std::norm(v);
  const double measure = f.domain == Domain::position ? f.grid.dx() : f.grid.dq() / kTwoPi;
  return sum * measure;
}

}  // namespace spdcimg
