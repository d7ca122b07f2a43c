#include "spdcimg/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdcimg/error.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg::oracle {

bool ImagingGeometry::at_imaging_condition(double tol) const {
  return std::abs(1.0 / f - 1.0 / O - 1.0 / I) * std::abs(f) <= tol;
}

ImagingGeometry thin_lens_solve(std::optional<double> O, std::optional<double> I, std::optional<double> f) {
  const int given = int(O.has_value()) + int(I.has_value()) + int(f.has_value());
  if (given != 2) throw InvalidArgument("thin_lens_solve needs exactly two of O, I, f");
  for (const auto& v : {O, I, f}) {
    if (v && !(*v > 0.0)) throw InvalidArgument("thin_lens_solve: distances must be positive");
  }
  ImagingGeometry g;
  if (!I) {
    if (*O <= *f) throw DomainError("O <= f: the lens forms no real image");
    g.O = *O;
    g.f = *f;
    g.I = 1.0 / (1.0 / *f - 1.0 / *O);
  } else if (!O) {
    if (*I <= *f) throw DomainError("I <= f: no real object distance");
    g.I = *I;
    g.f = *f;
    g.O = 1.0 / (1.0 / *f - 1.0 / *I);
  } else {
    g.O = *O;
    g.I = *I;
    g.f = 1.0 / (1.0 / *O + 1.0 / *I);
  }
  g.m = g.I / g.O;
  return g;
}

ImagingGeometry imaging_geometry(const ExperimentGeometry& geometry) {
  if (!geometry.f) throw DomainError("imaging predictions need a lens");
  ImagingGeometry g{geometry.object_distance(), geometry.image_distance(), *geometry.f, 0.0};
  g.m = g.I / g.O;
  return g;
}

Amplitude object_amplitude(const PumpSpec& spec) {
  return [spec](double x) {
    double envelope = 1.0;
    if (const auto* g = std::get_if<GaussianBeam>(&spec.illumination)) envelope = std::exp(-(x * x) / (g->waist * g->waist));
    return cplx{envelope * spec.object(x), 0.0};
  };
}

std::vector<double> predict_coincidence_profile(const Amplitude& w0, const ImagingGeometry& geometry, ScanMode mode,
                                                std::span<const double> positions, double fixed_position) {
  if (!geometry.at_imaging_condition(1e-9)) throw DomainError("geometry is not at the imaging condition");
  const double m = geometry.m;
  const double c = fixed_position;
  std::vector<double> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double p = positions[i];
    double arg = 0.0;
    switch (mode) {
      case ScanMode::pump_intensity:
      case ScanMode::simultaneous_same: arg = -p / m; break;
      case ScanMode::fixed_signal:
      case ScanMode::fixed_idler: arg = -(p + c) / (2.0 * m); break;
      case ScanMode::simultaneous_opposite: arg = -c / m; break;
    }
    out[i] = std::norm(w0(arg));
  }
  const double peak = out.empty() ? 0.0 : *std::max_element(out.begin(), out.end());
  if (peak > 0.0) {
    for (auto& v : out) v /= peak;
  }
  return out;
}

double fraunhofer_double_slit(double d, double a, double wavelength, double D, double x) {
  const double u = kPi * x / (wavelength * D);
  const double fringe = std::cos(u * d);
  const double env = (u * a == 0.0) ? 1.0 : std::sin(u * a) / (u * a);
  return fringe * fringe * env * env;
}

cplx reduced_arm_kernel(double z2, double f, double z, double k, double rho, double q) {
  const double den = z - z2 - f;
  if (den == 0.0) throw DomainError("z - z2 = f: reduced kernel coefficients diverge");
  const double quad = z2 - f + f * f / den;
  const double lin = f / den;
  return std::polar(1.0, -q * q / (2.0 * k) * quad - lin * q * rho);
}

RayMatrix ray_matrix(const ArmChain& chain) {
  RayMatrix m;
  for (const auto& e : chain.elements) {
    validate(e);
    RayMatrix s;
    if (const auto* fs = std::get_if<FreeSpace>(&e)) {
      s.B = fs->z;
    } else if (const auto* lens = std::get_if<ThinLens>(&e)) {
      s.C = -1.0 / lens->f;
    } else {
      throw UnsupportedElement("ray matrices exist only for free space and thin lenses");
    }
    m = RayMatrix{s.A * m.A + s.B * m.C, s.A * m.B + s.B * m.D, s.C * m.A + s.D * m.C, s.C * m.B + s.D * m.D};
  }
  return m;
}

cplx chain_plane_wave_kernel(const ArmChain& chain, double rho, double q) {
  const RayMatrix m = ray_matrix(chain);
  if (m.A == 0.0) throw DomainError("detector plane is a focal plane of the chain (A = 0)");
  const double k = chain.k;
  const double phase = k * m.C * rho * rho / (2.0 * m.A) + q * rho / m.A - m.B * q * q / (2.0 * k * m.A);
  return std::polar(1.0, phase) / std::sqrt(cplx{m.A, 0.0});
}

ArmKernelComparison compare_arm_kernel(double z2, double f, double z) {
  const double den = z - z2 - f;
  if (den == 0.0) throw DomainError("z - z2 = f: reduced kernel coefficients diverge");
  ArmChain chain{1.0, {FreeSpace{z2}, ThinLens{f}, FreeSpace{z - z2}}};
  const RayMatrix m = ray_matrix(chain);
  ArmKernelComparison out;
  out.quadratic_reduced = z2 - f + f * f / den;
  out.quadratic_chain = m.B / m.A;
  out.linear_reduced = -f / den;
  out.linear_chain = 1.0 / m.A;
  return out;
}

namespace {

struct RelativeIntegral {
  double b;  // coefficient of q^2
  double c;  // coefficient of -q
};

RelativeIntegral relative_integral(const ImagingGeometry& g, double z1, double k_pump, double rho_minus) {
  if (!(z1 > 0.0)) throw DomainError("the relative-coordinate factor needs z1 > 0");
  if (!(k_pump > 0.0)) throw InvalidArgument("pump wavenumber must be positive");
  return {z1 / (2.0 * k_pump), g.O / (2.0 * g.I) * rho_minus};
}

}  // namespace

cplx relative_factor_closed_form(const ImagingGeometry& geometry, double z1, double k_pump, double rho_minus) {
  const auto [b, c] = relative_integral(geometry, z1, k_pump, rho_minus);
  return std::sqrt(kPi / b) * std::polar(1.0, kPi / 4.0 - c * c / (4.0 * b));
}

cplx relative_factor_quadrature(const ImagingGeometry& geometry, double z1, double k_pump, double rho_minus) {
  const auto [b, c] = relative_integral(geometry, z1, k_pump, rho_minus);
  const auto phase = [b = b, c = c](cplx q) { return b * q * q - c * q; };

  // Newton on phi'(q) with a finite-difference derivative.
  double q0 = 0.0;
  for (int it = 0; it < 50; ++it) {
    const double h = 1e-3 * (1.0 + std::abs(q0));
    const double d1 = (phase(q0 + h) - phase(q0 - h)).real() / (2.0 * h);
    const double d2 = (phase(q0 + h) - 2.0 * phase(q0) + phase(q0 - h)).real() / (h * h);
    const double step = d1 / d2;
    q0 -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(q0))) break;
  }

  // Along q = q0 + t e^{i pi/4} the integrand decays like exp(-b t^2).
  const cplx dir = std::polar(1.0, kPi / 4.0);
  const double T = std::sqrt(40.0 / b);
  const int panels = 800;
  const double h = 2.0 * T / panels;
  cplx sum{0.0, 0.0};
  for (int j = 0; j <= panels; ++j) {
    const double t = -T + h * j;
    const double w = (j == 0 || j == panels) ? 0.5 : 1.0;
    sum += w * std::exp(cplx{0.0, 1.0} * phase(q0 + t * dir));
  }
  return sum * h * dir;
}

}  // namespace spdcimg::oracle
