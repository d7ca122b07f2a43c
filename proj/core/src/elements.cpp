#include "spdcimg/elements.hpp"

#include <cmath>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {

double ArmChain::total_length() const {
  double total = 0.0;
  for (const auto& e : elements) {
    if (const auto* fs = std::get_if<FreeSpace>(&e)) total += fs->z;
  }
  return total;
}

bool ArmChain::has_aperture() const {
  for (const auto& e : elements) {
    if (std::holds_alternative<Aperture>(e)) return true;
  }
  return false;
}

void validate(const Element& e) {
  if (const auto* fs = std::get_if<FreeSpace>(&e)) {
    if (!(fs->z > 0.0) || !std::isfinite(fs->z)) throw InvalidArgument("FreeSpace requires z > 0");
  } else if (const auto* lens = std::get_if<ThinLens>(&e)) {
    if (lens->f == 0.0 || !std::isfinite(lens->f)) throw InvalidArgument("ThinLens requires f != 0");
  }
}

namespace sampling {

double support_radius(const ComplexVector& values) {
  const std::size_t n = values.size();
  const double half = static_cast<double>(n / 2);
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (values[j] != cplx{0.0, 0.0}) r = std::max(r, std::abs(static_cast<double>(j) - half));
  }
  return r;
}

double edge_phase_step(const ComplexVector& values, const Grid& grid, Domain axis, double coef) {
  const double r = support_radius(values);
  if (r == 0.0) return 0.0;
  const double du = axis == Domain::position ? grid.dx() : grid.dq();
  const double outer = r * du;
  const double inner = (r - 1.0) * du;
  return std::abs(coef * (outer * outer - inner * inner));
}

}  // namespace sampling

SampledField apply_aperture(const SampledField& field, const Mask& mask) {
  if (field.domain != Domain::position) throw DomainError("apply_aperture expects a position-domain field");
  SampledField out = field;
  for (std::size_t j = 0; j < out.size(); ++j) out.values[j] *= mask(field.grid.x(j));
  return out;
}

SampledField propagate_free(const SampledField& field, double z) {
  if (z == 0.0) return field;
  if (!(field.k > 0.0)) throw InvalidArgument("propagate_free requires a positive wavenumber");
  SampledField spec = field.domain == Domain::position ? forward_spectrum(field) : field;
  const double coef = z / (2.0 * field.k);
  const double step = sampling::edge_phase_step(spec.values, spec.grid, Domain::momentum, coef);
  if (step >= kPi) {
    const double lambda = kTwoPi / field.k;
    const double need = lambda * std::abs(z);
    const double n = static_cast<double>(field.grid.size());
    std::ostringstream msg;
    msg << "free-space propagation over " << z << " m is undersampled (edge phase step " << step
        << " rad >= pi); need n*dx^2 > lambda*|z| = " << need << " m^2: use dx >= " << std::sqrt(need / n)
        << " m at n = " << field.grid.size() << ", or n >= " << std::ceil(need / (field.grid.dx() * field.grid.dx()));
    throw SamplingError(msg.str());
  }
  return detail::propagate_free_unchecked(field, z);
}

namespace detail {

SampledField propagate_free_unchecked(const SampledField& field, double z) {
  if (z == 0.0) return field;
  SampledField spec = field.domain == Domain::position ? forward_spectrum(field) : field;
  const double coef = z / (2.0 * field.k);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const double q = spec.grid.q(j);
    spec.values[j] *= std::polar(1.0, -coef * q * q);
  }
  return field.domain == Domain::position ? inverse_spectrum(spec) : spec;
}

}  // namespace detail

SampledField apply_thin_lens(const SampledField& field, double focal_length) {
  if (field.domain != Domain::position) throw DomainError("apply_thin_lens expects a position-domain field");
  validate(ThinLens{focal_length});
  const double coef = -field.k / (2.0 * focal_length);
  const double step = sampling::edge_phase_step(field.values, field.grid, Domain::position, coef);
  if (step >= kPi) {
    const double lambda = kTwoPi / field.k;
    std::ostringstream msg;
    msg << "lens chirp (f = " << focal_length << " m) is undersampled at the field edge (phase step " << step
        << " rad >= pi); need (support width)*dx < lambda*|f| = " << lambda * std::abs(focal_length)
        << " m^2: reduce dx below "
        << kPi / (2.0 * std::abs(coef) * sampling::support_radius(field.values) * field.grid.dx())
        << " m";
    throw SamplingError(msg.str());
  }
  SampledField out = field;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = field.grid.x(j);
    out.values[j] *= std::polar(1.0, coef * x * x);
  }
  return out;
}

}  // namespace spdcimg
