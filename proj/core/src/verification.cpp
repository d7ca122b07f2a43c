#include "spdcimg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "spdcimg/coincidence.hpp"
#include "spdcimg/experiment.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/oracles.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

double max_abs(const ComplexVector& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_max_diff(const ComplexVector& a, const ComplexVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  const double scale = std::max(max_abs(a), max_abs(b));
  return scale > 0.0 ? d / scale : d;
}

ComplexVector random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

CheckResult check(std::string name, double residual, double tolerance, std::string note = {}) {
  return {std::move(name), residual, tolerance, residual <= tolerance, false, std::move(note)};
}

CheckResult info(std::string name, double residual, std::string note) {
  return {std::move(name), residual, 0.0, true, true, std::move(note)};
}

SampledField gaussian(const Grid& grid, double waist, double k) {
  SampledField f(grid, Domain::position, k);
  for (std::size_t j = 0; j < grid.size(); ++j) f.values[j] = std::exp(-std::pow(grid.x(j) / waist, 2));
  return f;
}

void hygiene(const ExperimentConfig& config, const VerificationOptions& opt, VerificationReport& rep) {
  const PumpSpec spec = make_pump_spec(config);
  const Grid grid = choose_pump_grid(config).grid;
  std::mt19937_64 rng(opt.seed);

  SampledField noise(grid, random_complex(grid.size(), rng), Domain::position, spec.k_pump());
  const SampledField spectrum = forward_spectrum(noise);
  rep.checks.push_back(check("fft round trip", relative_max_diff(inverse_spectrum(spectrum).values, noise.values), 1e-12));
  const double ex = field_energy(noise);
  rep.checks.push_back(check("Parseval", std::abs(field_energy(spectrum) - ex) / ex, 1e-12));

  const SampledField w0 = object_field(spec, grid);
  const SampledField at_crystal = propagate_free(w0, config.geometry.z1);
  rep.checks.push_back(check("free propagation unitarity",
                             std::abs(field_energy(at_crystal) - field_energy(w0)) / field_energy(w0), 1e-12));

  const double za = config.geometry.z1;
  const double zb = config.geometry.f ? config.geometry.z2 : config.geometry.z;
  const SampledField g = gaussian(grid, 0.5e-3, spec.k_pump());
  const SampledField two = propagate_free(propagate_free(g, za), zb);
  const SampledField one = propagate_free(g, za + zb);
  rep.checks.push_back(check("propagation composition", relative_max_diff(two.values, one.values), 1e-12));
}

void kernels(const ExperimentConfig& config, VerificationReport& rep) {
  const PumpSpec spec = make_pump_spec(config);
  const ArmChain arm = twin_arm_chain(config.geometry, spec.k_twin());
  const Grid grid = choose_coincidence_grid(config).grid;
  const double limit = arm_scan_limit(arm, grid);
  const auto rho = linspace(-limit, limit, 33);
  const ArmKernel k = build_arm_kernel(arm, rho, grid);
  ComplexVector expect(k.h.size());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) expect[i * k.cols() + j] = oracle::chain_plane_wave_kernel(arm, rho[i], grid.q(j));
  }
  rep.checks.push_back(check("arm kernel vs ray-matrix oracle", relative_max_diff(k.h, expect), 1e-8));

  if (!config.geometry.f) return;
  const auto& g = config.geometry;
  const auto cmp = oracle::compare_arm_kernel(g.z2, *g.f, g.z);
  rep.checks.push_back(check("reduced arm kernel, linear coefficient", std::abs(cmp.linear_residual()), 1e-12));
  char note[200];
  std::snprintf(note, sizeof note, "reduced %.6f m, ray matrix %.6f m; sign of the f^2/(z-z2-f) term differs",
                cmp.quadratic_reduced, cmp.quadratic_chain);
  rep.checks.push_back(info("reduced arm kernel, quadratic coefficient", std::abs(cmp.quadratic_residual()), note));
  if (g.at_imaging_condition(1e-9)) {
    const auto ig = oracle::imaging_geometry(g);
    const double lhs = *g.f / (g.z - g.z2 - *g.f);
    rep.checks.push_back(check("thin-lens identity f/(z-z2-f) = O/I", std::abs(lhs - ig.O / ig.I) / (ig.O / ig.I), 1e-12));
    rep.checks.push_back(check("chain quadratic coefficient = -z1", std::abs(cmp.quadratic_chain + g.z1) / g.z1, 1e-12));
  }
}

void engine(const ExperimentConfig& config, const VerificationOptions& opt, VerificationReport& rep) {
  std::mt19937_64 rng(opt.seed + 1);
  const Grid small = make_grid(opt.small_n, 1e-5);
  const SpectralWindow window{config.grid.taper};
  const auto w = window.weights(small);
  double worst = 0.0;
  for (std::size_t inst = 0; inst < opt.random_instances; ++inst) {
    SampledField V(small, random_complex(small.size(), rng), Domain::momentum, 1.0);
    for (std::size_t j = 0; j < small.size(); ++j) {
      const std::size_t dist = j > small.size() / 2 ? j - small.size() / 2 : small.size() / 2 - j;
      if (dist >= small.size() / 4) V.values[j] = 0.0;
    }
    ComplexVector fast, direct;
    for (int pair = 0; pair < 4; ++pair) {
      const ComplexVector hi = random_complex(small.size(), rng);
      const ComplexVector hs = random_complex(small.size(), rng);
      fast.push_back(coincidence_amplitude_fast(V, hi, hs, w));
      direct.push_back(coincidence_amplitude_direct(V, hi, hs, w));
    }
    worst = std::max(worst, relative_max_diff(fast, direct));
  }
  rep.checks.push_back(check("fast vs direct, " + std::to_string(opt.random_instances) + " random instances at n=" +
                                 std::to_string(opt.small_n),
                             worst, 1e-8));

  const CoincidenceModel model = build_coincidence_model(config);
  std::vector<double> ri, rs;
  for (ScanMode mode : {ScanMode::fixed_signal, ScanMode::simultaneous_same}) {
    const auto all = scan_positions(config, mode);
    for (std::size_t s = 0; s < opt.spot_points; ++s) {
      const double p = all[s * (all.size() - 1) / (opt.spot_points - 1)];
      ri.push_back(p);
      rs.push_back(mode == ScanMode::fixed_signal ? config.detection.fixed : p);
    }
  }
  const auto f = coincidence_amplitudes(model, ri, rs, Method::fast);
  const auto d = coincidence_amplitudes(model, ri, rs, Method::direct);
  rep.checks.push_back(check("fast vs direct, scan spot points at n=" + std::to_string(model.grid.size()),
                             relative_max_diff(f, d), 1e-8));

  if (!config.geometry.f) return;
  if (!config.geometry.at_imaging_condition(1e-9)) {
    rep.checks.push_back(info("rho_+ dependence", 0.0, "skipped: geometry is not at the imaging condition"));
    return;
  }
  // C along lines of constant rho_i + rho_s.
  const double r = config.detection.range;
  const auto plus = linspace(-2.0 * r, 2.0 * r, 21);
  const auto shift = linspace(-r, r, 11);
  std::vector<double> a, b;
  for (double p : plus) {
    for (double s : shift) {
      a.push_back(0.5 * p + s);
      b.push_back(0.5 * p - s);
    }
  }
  const auto amp = coincidence_amplitudes(model, a, b);
  double peak = 0.0, dev = 0.0;
  for (const auto& x : amp) peak = std::max(peak, std::norm(x));
  for (std::size_t i = 0; i < plus.size(); ++i) {
    const double ref = std::norm(amp[i * shift.size() + shift.size() / 2]);
    for (std::size_t j = 0; j < shift.size(); ++j) dev = std::max(dev, std::abs(std::norm(amp[i * shift.size() + j]) - ref));
  }
  rep.checks.push_back(check("rho_+ only dependence", dev / peak, 1e-3));
}

void relative_factor(const ExperimentConfig& config, const VerificationOptions& opt, VerificationReport& rep) {
  const auto& g = config.geometry;
  if (!g.f || !g.at_imaging_condition(1e-9)) return;
  const auto ig = oracle::imaging_geometry(g);
  const PumpSpec spec = make_pump_spec(config);
  const double kp = spec.k_pump();
  const auto rho_minus = linspace(-2.0 * config.detection.range, 2.0 * config.detection.range, 41);

  double quad_dev = 0.0;
  double qlo = 1e300, qhi = 0.0;
  for (double rm : rho_minus) {
    const cplx q = oracle::relative_factor_quadrature(ig, g.z1, kp, rm);
    const cplx c = oracle::relative_factor_closed_form(ig, g.z1, kp, rm);
    quad_dev = std::max(quad_dev, std::abs(q - c) / std::abs(c));
    qlo = std::min(qlo, std::abs(q));
    qhi = std::max(qhi, std::abs(q));
  }
  rep.checks.push_back(check("rho_- factor, quadrature vs closed form", quad_dev, 1e-10));
  rep.checks.push_back(check("rho_- factor modulus, quadrature", (qhi - qlo) / qhi, 1e-6));

  ExperimentConfig fine = config;
  fine.grid.coincidence_n = opt.relative_factor_n;
  fine.grid.coincidence_dx.reset();
  const Grid grid = choose_coincidence_grid(fine).grid;
  SampledField V(grid, Domain::momentum, kp);
  V.values[grid.size() / 2] = 1.0 / grid.dq();  // plane-wave pump
  const ArmChain arm = twin_arm_chain(g, spec.k_twin());
  const CoincidenceModel model{{V, SpectrumPlane::crystal}, arm, arm, grid, SpectralWindow{config.grid.taper}, true};
  std::vector<double> ri, rs;
  for (double rm : rho_minus) {
    ri.push_back(0.5 * rm);
    rs.push_back(-0.5 * rm);
  }
  const auto amp = coincidence_amplitudes(model, ri, rs);
  double lo = 1e300, hi = 0.0;
  for (const auto& x : amp) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  rep.checks.push_back(check("rho_- factor modulus, engine at n=" + std::to_string(grid.size()), (hi - lo) / hi, 1e-6,
                             "phase coefficient O/2I; the O/I variant differs only in phase"));
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  char buf[512];
  for (const auto& c : checks) {
    const char* tag = c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL");
    if (c.informational) {
      std::snprintf(buf, sizeof buf, "%s  %-48s residual %.3e", tag, c.name.c_str(), c.residual);
    } else {
      std::snprintf(buf, sizeof buf, "%s  %-48s residual %.3e  tolerance %.1e", tag, c.name.c_str(), c.residual,
                    c.tolerance);
    }
    out << buf;
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << "\n";
  }
  out << (all_passed() ? "all checks passed" : "verification FAILED") << "\n";
  return out.str();
}

VerificationReport run_verification(const ExperimentConfig& config, const VerificationOptions& options) {
  VerificationReport rep;
  hygiene(config, options, rep);
  kernels(config, rep);
  engine(config, options, rep);
  relative_factor(config, options, rep);
  const PumpSpec spec = make_pump_spec(config);
  rep.checks.push_back(info("pump energy in the outer 10% of the grid",
                            pump_guard_band_energy(spec, config.geometry, choose_pump_grid(config).grid),
                            "wrap-around diagnostic"));
  return rep;
}

}  // namespace spdcimg
