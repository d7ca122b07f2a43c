#pragma once

#include <span>
#include <vector>

#include "spdcimg/arm_kernel.hpp"
#include "spdcimg/geometry.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/scan.hpp"

namespace spdcimg {

/// Smooth (C-infinity) roll-off over the outer `taper` fraction of the q'
/// band, w = 1 / (1 + exp(1/(1-s) - 1/s)) with s running 0..1 across it.
/// The weights multiply each arm's kernel inside the coincidence sum and
/// suppress the ripple a hard band edge leaves on the relative-coordinate
/// factor. taper = 0 gives plain rectangle-rule quadrature.
struct SpectralWindow {
  double taper = 0.3;

  std::vector<double> weights(const Grid& grid) const;
};

/// Throws InvalidArgument if V has a nonzero sample at or beyond a quarter of
/// the grid from the centre, where sums q'_i + q'_s would leave the grid.
void require_half_band_support(const SampledField& spectrum);

/// A = sum_{q'_i} sum_{q'_s} V(q'_i + q'_s) w h_i(q'_i) w h_s(q'_s) dq'^2, summed term by term.
cplx coincidence_amplitude_direct(const SampledField& V, std::span<const cplx> idler_row,
                                  std::span<const cplx> signal_row, std::span<const double> weights);

/// Same amplitude; the inner sum at fixed Q = q'_i + q'_s is a convolution of
/// the two kernel rows, done for every Q at once with one zero-padded FFT pair.
cplx coincidence_amplitude_fast(const SampledField& V, std::span<const cplx> idler_row,
                                std::span<const cplx> signal_row, std::span<const double> weights);

enum class Method { direct, fast };

/// Everything needed to evaluate C(rho_i, rho_s) for one experiment.
struct CoincidenceModel {
  PumpSpectrum crystal_spectrum;
  ArmChain idler;
  ArmChain signal;
  Grid grid;
  SpectralWindow window;
  bool degenerate = true;
};

/// Arm chain from the crystal to the detectors: free z2, lens, free z - z2 (or free z).
ArmChain twin_arm_chain(const ExperimentGeometry& geometry, double k);

CoincidenceModel make_coincidence_model(const PumpSpec& pump, const ExperimentGeometry& geometry, const Grid& grid,
                                        SpectralWindow window = {});

/// Largest |rho| the arm can be scanned to while keeping a 10% guard band
/// on each side of the (magnified) periodic window.
double arm_scan_limit(const ArmChain& chain, const Grid& grid);

/// Amplitudes at explicit (rho_i, rho_s) pairs. Builds the kernels it needs.
ComplexVector coincidence_amplitudes(const CoincidenceModel& model, std::span<const double> rho_i,
                                     std::span<const double> rho_s, Method method = Method::fast);

/// Slit-integrated coincidence scan. Rates are max-normalised; Poisson noise,
/// when configured, is applied afterwards to rate * mean_counts.
ScanResult run_scan(const ScanConfig& config, const CoincidenceModel& model, Method method = Method::fast);

/// Full C(rho_i, rho_s) on the outer product of two position lists (row-major
/// over rho_i). Meant for small grids.
std::vector<double> coincidence_map(const CoincidenceModel& model, std::span<const double> rho_i,
                                    std::span<const double> rho_s, Method method = Method::fast);

}  // namespace spdcimg
