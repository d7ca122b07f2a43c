#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "spdcimg/elements.hpp"
#include "spdcimg/geometry.hpp"
#include "spdcimg/grid.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/scan.hpp"

// Closed-form predictions. None of these touch the FFT engine.

namespace spdcimg::oracle {

struct ImagingGeometry {
  double O = 0.0;  // object -> lens
  double I = 0.0;  // lens -> image
  double f = 0.0;
  double m = 0.0;  // I / O

  /// |1/f - 1/O - 1/I| * f <= tol
  bool at_imaging_condition(double tol = 1e-12) const;
};

/// Exactly two of the three must be given. Throws DomainError when no real
/// image exists (O <= f solving for I, I <= f solving for O) and
/// InvalidArgument for non-positive inputs.
ImagingGeometry thin_lens_solve(std::optional<double> O, std::optional<double> I, std::optional<double> f);

/// O = z1 + z2, I = z - z2, m = I / O. Requires a lens.
ImagingGeometry imaging_geometry(const ExperimentGeometry& geometry);

using Amplitude = std::function<cplx(double)>;

/// W0(x) for a pump spec, evaluated pointwise (no grid).
Amplitude object_amplitude(const PumpSpec& spec);

/// Ideal image profiles, max-normalised, at the given scan positions:
///   pump / same   |W0(-rho / m)|^2
///   fixed_signal  |W0(-(rho + c) / (2m))|^2, signal held at c
///   fixed_idler   same with the roles swapped
///   opposite      |W0(-c / m)|^2, constant
/// The minus sign is the image inversion of a real image.
/// Throws DomainError unless the geometry is at the imaging condition.
std::vector<double> predict_coincidence_profile(const Amplitude& w0, const ImagingGeometry& geometry, ScanMode mode,
                                                std::span<const double> positions, double fixed_position = 0.0);

/// cos^2(pi d x / (lambda D)) sinc^2(pi a x / (lambda D)), equal to 1 at x = 0.
double fraunhofer_double_slit(double d, double a, double wavelength, double D, double x);

/// Reduced per-photon factor for the lens arm, up to a global constant:
///   exp[-i q^2/(2k) (z2 - f + f^2/(z - z2 - f))] exp[-i f/(z - z2 - f) q rho].
/// Throws DomainError when z - z2 == f.
cplx reduced_arm_kernel(double z2, double f, double z, double k, double rho, double q);

/// Ray matrix of a free-space / thin-lens chain (apertures rejected).
struct RayMatrix {
  double A = 1.0, B = 0.0, C = 0.0, D = 1.0;
};
RayMatrix ray_matrix(const ArmChain& chain);

/// Exact paraxial response of the chain to exp(i q x):
///   A^{-1/2} exp(i k C rho^2 / (2A)) exp(i q rho / A) exp(-i B q^2 / (2 k A)),
/// principal square root of the complex A. A = 0 (focal plane) is a DomainError.
cplx chain_plane_wave_kernel(const ArmChain& chain, double rho, double q);

/// Coefficients of the lens arm kernel, reduced form vs the ray-matrix form.
/// quadratic_*: coefficient L in exp(-i q^2 L / (2k)); linear_*: s in exp(i s q rho).
struct ArmKernelComparison {
  double quadratic_reduced = 0.0;
  double quadratic_chain = 0.0;
  double linear_reduced = 0.0;
  double linear_chain = 0.0;
  double quadratic_residual() const { return quadratic_reduced - quadratic_chain; }
  double linear_residual() const { return linear_reduced - linear_chain; }
};
ArmKernelComparison compare_arm_kernel(double z2, double f, double z);

/// Relative-coordinate factor at the imaging condition,
///   F(rho_-) = int dq exp(-i (O/2I) q rho_-) exp(i q^2 z1 / (2 kp)),  rho_- = rho_i - rho_s.
/// Closed form: sqrt(pi/b) e^{i pi/4} exp(-i O^2 rho_-^2 kp / (8 I^2 z1)), b = z1/(2kp).
cplx relative_factor_closed_form(const ImagingGeometry& geometry, double z1, double k_pump, double rho_minus);

/// The same integral by quadrature along the steepest-descent line through the
/// saddle, which is located numerically. Independent of the closed form.
cplx relative_factor_quadrature(const ImagingGeometry& geometry, double z1, double k_pump, double rho_minus);

}  // namespace spdcimg::oracle
