#include "spdcimg/tracked_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {

TrackedField::TrackedField(SampledField position_field) : envelope(std::move(position_field)) {
  if (envelope.domain != Domain::position) throw DomainError("TrackedField needs a position-domain field");
}

cplx TrackedField::value(std::size_t j) const {
  const double x = position(j);
  return prefactor * std::polar(1.0, -0.5 * k() * curvature * x * x) * envelope.values[j];
}

ComplexVector TrackedField::evaluate(std::span<const double> xs) const {
  const SampledField spec = forward_spectrum(envelope);
  double peak = 0.0;
  for (const auto& v : spec.values) peak = std::max(peak, std::abs(v));
  // Coefficients at roundoff level are dropped; a plane-wave envelope then
  // costs one term per point instead of n.
  const double threshold = 1e-12 * peak;
  const double norm = spec.grid.dq() / kTwoPi;
  std::vector<double> q;
  ComplexVector coef;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (std::abs(spec.values[j]) > threshold) {
      q.push_back(spec.grid.q(j));
      coef.push_back(spec.values[j] * norm);
    }
  }
  ComplexVector out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double y = x / scale;
    cplx sum{0.0, 0.0};
    for (std::size_t b = 0; b < q.size(); ++b) sum += coef[b] * std::polar(1.0, q[b] * y);
    out[i] = prefactor * std::polar(1.0, -0.5 * k() * curvature * x * x) * sum;
  }
  return out;
}

void propagate(TrackedField& field, const FreeSpace& step) {
  validate(step);
  double envelope_distance = 0.0;
  if (field.curvature == 0.0) {
    envelope_distance = step.z / (field.scale * field.scale);
  } else {
    const double m = 1.0 - step.z * field.curvature;
    if (std::abs(m) < 1e-12) {
      std::ostringstream msg;
      msg << "plane at " << step.z << " m coincides with a focus of the tracked beam; move the detection plane";
      throw SamplingError(msg.str());
    }
    envelope_distance = step.z / (m * field.scale * field.scale);
    field.scale *= m;
    field.prefactor /= std::sqrt(cplx{m, 0.0});
    field.curvature /= m;
  }
  field.envelope = field.check_sampling ? propagate_free(field.envelope, envelope_distance)
                                        : detail::propagate_free_unchecked(field.envelope, envelope_distance);
}

void propagate(TrackedField& field, const ThinLens& lens) {
  validate(lens);
  field.curvature += 1.0 / lens.f;
}

void propagate(TrackedField& field, const Aperture& aperture) {
  for (std::size_t j = 0; j < field.envelope.size(); ++j) {
    field.envelope.values[j] *= aperture.mask(field.position(j));
  }
}

TrackedField propagate_chain(TrackedField field, const ArmChain& chain) {
  if (chain.k != field.k()) throw InvalidArgument("chain wavenumber does not match the field");
  for (const auto& element : chain.elements) {
    std::visit([&field](const auto& e) { propagate(field, e); }, element);
  }
  return field;
}

IntensityProfile intensity_profile(const TrackedField& field) {
  const std::size_t n = field.envelope.size();
  IntensityProfile out;
  out.x.resize(n);
  out.intensity.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = field.position(j);
    out.intensity[j] = std::norm(field.value(j));
  }
  if (field.scale < 0.0) {
    std::reverse(out.x.begin(), out.x.end());
    std::reverse(out.intensity.begin(), out.intensity.end());
  }
  return out;
}

double EnvelopeSteps::max_distance() const {
  double worst = 0.0;
  for (double d : distances) worst = std::max(worst, std::abs(d));
  return worst;
}

EnvelopeSteps envelope_steps(const ArmChain& chain) {
  EnvelopeSteps out;
  double curvature = 0.0;
  for (const auto& element : chain.elements) {
    if (const auto* lens = std::get_if<ThinLens>(&element)) {
      curvature += 1.0 / lens->f;
    } else if (const auto* fs = std::get_if<FreeSpace>(&element)) {
      double d = fs->z / (out.scale * out.scale);
      if (curvature != 0.0) {
        const double m = 1.0 - fs->z * curvature;
        if (std::abs(m) < 1e-12) throw SamplingError("chain places a focus on a free-space boundary");
        d = fs->z / (m * out.scale * out.scale);
        out.scale *= m;
        curvature /= m;
      }
      out.distances.push_back(d);
    }
  }
  return out;
}

}  // namespace spdcimg
