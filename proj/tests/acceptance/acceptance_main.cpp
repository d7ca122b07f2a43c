// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spdcimg/analysis.hpp"
#include "spdcimg/coincidence.hpp"
#include "spdcimg/config.hpp"
#include "spdcimg/experiment.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/oracles.hpp"
#include "spdcimg/scan_file.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

using namespace spdcimg;

namespace {

constexpr double kSlitSeparation = 300e-6;
constexpr std::size_t kRelativeFactorN = 2048;
// Nominal m ~ 1.5; the thin-lens value is what we test against.
constexpr double kNominalMagnification = 1.5;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d: %s  [%s]\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double value, double expected, double rel) { return std::abs(value / expected - 1.0) <= rel; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig load(const char* name) { return load_config(std::string(SPDCIMG_CONFIG_DIR) + "/" + name); }

double max_rel(const ComplexVector& a, const ComplexVector& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return d / s;
}

ComplexVector random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> N;
  ComplexVector v(n);
  for (auto& x : v) x = {N(rng), N(rng)};
  return v;
}

// Criteria 1-3: imaging with the lens.
void imaging() {
  ExperimentConfig literal = load("fig3.conf");
  literal.geometry.z = 0.70;
  const ExperimentConfig imaged = load("fig3.conf");
  const double m_thin = oracle::imaging_geometry(imaged.geometry).m;

  auto t0 = std::chrono::steady_clock::now();
  const double sep_literal = peak_separation(run_pump_scan(literal)) / kSlitSeparation;
  const double t_literal = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const ScanResult pump = run_pump_scan(imaged);
  const double t_pump = seconds_since(t0);
  const double pump_sep = peak_separation(pump);
  const double sep_imaged = pump_sep / kSlitSeparation;
  report(1, "pump image separation / slit separation = I/O",
         within(sep_literal, m_thin, 0.05) && within(sep_imaged, m_thin, 0.05) && std::max(t_literal, t_pump) <= 10.0 &&
             within(m_thin, kNominalMagnification, 0.05),
         fmt("I/O %.4f (nominal m~%.1f); z=70 cm: %.4f, z=%.6g m: %.4f; tol 5%%; n=%zu; %.2f s, %.2f s", m_thin,
             kNominalMagnification, sep_literal, imaged.geometry.z, sep_imaged, imaged.grid.n, t_literal, t_pump));

  t0 = std::chrono::steady_clock::now();
  const ScanResult fixed = run_coincidence_scan(imaged, ScanMode::fixed_signal);
  const double t_fixed = seconds_since(t0);
  const double r_fixed = peak_separation(fixed) / pump_sep;
  report(2, "fixed-detector image separation / pump separation = 2",
         within(r_fixed, 2.0, 0.03) && t_fixed <= 60.0 && fixed.positions.size() == 101,
         fmt("ratio %.5f; tol 3%%; n=%zu, %zu points; %.2f s", r_fixed, imaged.grid.coincidence_n, fixed.positions.size(),
             t_fixed));

  const double r_same = peak_separation(run_coincidence_scan(imaged, ScanMode::simultaneous_same)) / pump_sep;
  report(3, "simultaneous-scan separation / pump separation = 1", within(r_same, 1.0, 0.03),
         fmt("ratio %.5f; tol 3%%", r_same));
}

// Criterion 4: fringe transfer without a lens.
void fringes() {
  const ExperimentConfig cfg = load("fig2.conf");
  const auto t0 = std::chrono::steady_clock::now();
  const double p_pump = fringe_period(run_pump_scan(cfg));
  const double p_same = fringe_period(run_coincidence_scan(cfg, ScanMode::simultaneous_same));
  const double p_fixed = fringe_period(run_coincidence_scan(cfg, ScanMode::fixed_signal));
  report(4, "fringe period ratios without a lens: same/pump = 1, fixed/pump = 2",
         within(p_same / p_pump, 1.0, 0.03) && within(p_fixed / p_pump, 2.0, 0.03),
         fmt("pump period %.4f mm; same/pump %.5f; fixed/pump %.5f; tol 3%%; n=%zu; %.2f s", p_pump * 1e3,
             p_same / p_pump, p_fixed / p_pump, cfg.grid.coincidence_n, seconds_since(t0)));
}

// Criterion 5: fast path against the term-by-term double sum.
void oracle_equivalence() {
  std::mt19937_64 rng(2024);
  double worst_random = 0.0;
  for (std::size_t n : {64u, 128u}) {
    const Grid g = make_grid(n, 1e-5);
    const auto w = SpectralWindow{0.3}.weights(g);
    ComplexVector fast, direct;
    for (int trial = 0; trial < 20; ++trial) {
      SampledField V(g, random_complex(rng, n), Domain::momentum, 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t dist = j > n / 2 ? j - n / 2 : n / 2 - j;
        if (dist >= n / 4) V.values[j] = 0.0;
      }
      const auto a = random_complex(rng, n);
      const auto b = random_complex(rng, n);
      const cplx f = coincidence_amplitude_fast(V, a, b, w);
      const cplx d = coincidence_amplitude_direct(V, a, b, w);
      worst_random = std::max(worst_random, std::abs(f - d) / std::abs(d));
    }
  }

  double worst_spot = 0.0;
  for (const char* name : {"fig2.conf", "fig3.conf"}) {
    ExperimentConfig cfg = load(name);
    cfg.grid.coincidence_n = 512;
    const CoincidenceModel model = build_coincidence_model(cfg);
    for (ScanMode mode : {ScanMode::fixed_signal, ScanMode::simultaneous_same}) {
      const auto all = scan_positions(cfg, mode);
      std::vector<double> ri, rs;
      for (std::size_t s = 0; s < 11; ++s) {
        const double p = all[s * (all.size() - 1) / 10];
        ri.push_back(p);
        rs.push_back(mode == ScanMode::fixed_signal ? cfg.detection.fixed : p);
      }
      worst_spot = std::max(worst_spot, max_rel(coincidence_amplitudes(model, ri, rs, Method::fast),
                                                coincidence_amplitudes(model, ri, rs, Method::direct)));
    }
  }
  report(5, "fast coincidence sum equals the direct double sum",
         worst_random <= 1e-8 && worst_spot <= 1e-8,
         fmt("20 random instances at n=64 and n=128: %.2e; 11 spot points of each scan at n=512: %.2e; tol 1e-8",
             worst_random, worst_spot));
}

// Criterion 6: at the imaging condition C depends on rho_i + rho_s only.
void rho_plus_only() {
  const ExperimentConfig cfg = load("fig3.conf");
  const CoincidenceModel model = build_coincidence_model(cfg);
  const double r = cfg.detection.range;
  const auto grid = linspace(-r, r, 13);
  const std::vector<double> shifts{-0.5 * r, -0.25 * r, 0.25 * r, 0.5 * r};
  std::vector<double> ri, rs;
  for (double a : grid) {
    for (double b : grid) {
      ri.push_back(a);
      rs.push_back(b);
      for (double d : shifts) {
        ri.push_back(a + d);
        rs.push_back(b - d);
      }
    }
  }
  const auto amp = coincidence_amplitudes(model, ri, rs);
  const std::size_t stride = shifts.size() + 1;
  double peak = 0.0, dev = 0.0;
  for (const auto& a : amp) peak = std::max(peak, std::norm(a));
  for (std::size_t i = 0; i < amp.size(); i += stride) {
    for (std::size_t k = 1; k < stride; ++k) dev = std::max(dev, std::abs(std::norm(amp[i + k]) - std::norm(amp[i])));
  }

  ExperimentConfig opp = cfg;
  const double md = oracle::imaging_geometry(cfg.geometry).m * kSlitSeparation;
  opp.detection.fixed = md / 2.0;  // centred on one slit image
  opp.detection.slit_width = 0.0;
  const auto flat = run_coincidence_scan(opp, ScanMode::simultaneous_opposite);
  const auto [lo, hi] = std::minmax_element(flat.rates.begin(), flat.rates.end());
  const double flatness = (*hi - *lo) / *hi;
  report(6, "coincidence rate depends only on rho_i + rho_s at the imaging condition",
         dev / peak <= 1e-3 && flatness <= 1e-3,
         fmt("max |C(ri+d, rs-d) - C(ri, rs)| / peak %.2e over |ri|,|rs| <= %.2g mm; opposite scan at c = %.4f mm "
             "spread %.2e; tol 1e-3",
             dev / peak, r * 1e3, opp.detection.fixed * 1e3, flatness));
}

// Criterion 7: the rho_- factor has constant modulus.
void relative_modulus() {
  struct Case {
    double z1, z2;
  };
  const double f = 0.25, lambda = 442e-9, kp = wavenumber(lambda);
  const auto rho_minus = linspace(-1.2e-3, 1.2e-3, 49);
  std::string detail;
  bool pass = true;
  for (const Case c : {Case{0.10, 0.31}, Case{0.34, 0.07}, Case{0.80, 0.07}}) {
    const auto ig = oracle::thin_lens_solve(c.z1 + c.z2, std::nullopt, f);
    double qlo = 1e300, qhi = 0.0, qdev = 0.0;
    for (double rm : rho_minus) {
      const cplx q = oracle::relative_factor_quadrature(ig, c.z1, kp, rm);
      const cplx cf = oracle::relative_factor_closed_form(ig, c.z1, kp, rm);
      qlo = std::min(qlo, std::abs(q));
      qhi = std::max(qhi, std::abs(q));
      qdev = std::max(qdev, std::abs(q - cf) / std::abs(cf));
    }

    ExperimentConfig cfg = load("fig3.conf");
    cfg.geometry = {c.z1, c.z2, c.z2 + ig.I, f};
    cfg.grid.coincidence_n = kRelativeFactorN;
    const Grid grid = choose_coincidence_grid(cfg).grid;
    SampledField V(grid, Domain::momentum, kp);
    V.values[grid.size() / 2] = 1.0 / grid.dq();  // plane-wave pump isolates the rho_- factor
    const ArmChain arm = twin_arm_chain(cfg.geometry, 0.5 * kp);
    const CoincidenceModel model{{V, SpectrumPlane::crystal}, arm, arm, grid, SpectralWindow{cfg.grid.taper}, true};
    std::vector<double> ri, rs;
    for (double rm : rho_minus) {
      ri.push_back(0.5 * rm);
      rs.push_back(-0.5 * rm);
    }
    const auto amp = coincidence_amplitudes(model, ri, rs);
    double lo = 1e300, hi = 0.0;
    for (const auto& a : amp) {
      lo = std::min(lo, std::abs(a));
      hi = std::max(hi, std::abs(a));
    }
    const double qmod = (qhi - qlo) / qhi, emod = (hi - lo) / hi;
    pass = pass && qmod <= 1e-6 && emod <= 1e-6 && qdev <= 1e-6;
    detail += fmt("z1=%.2f m: quadrature %.1e (vs closed form %.1e), engine %.1e; ", c.z1, qmod, qdev, emod);
  }
  report(7, "rho_- factor has constant modulus", pass, detail + "rho_- in +-1.2 mm, engine n=" + std::to_string(kRelativeFactorN) + ", tol 1e-6");
}

// Criterion 8: numerical hygiene.
void hygiene() {
  std::mt19937_64 rng(99);
  const Grid g = make_grid(4096, 12.5e-6);
  const double k = wavenumber(442e-9);
  SampledField f(g, random_complex(rng, g.size()), Domain::position, k);
  // Smooth band-limited input so long propagations stay sampled.
  SampledField spec = forward_spectrum(f);
  for (std::size_t j = 0; j < g.size(); ++j) spec.values[j] *= std::exp(-std::pow(g.q(j) / (0.1 * g.q_max()), 2));
  f = inverse_spectrum(spec);

  const double round_trip = max_rel(inverse_spectrum(forward_spectrum(f)).values, f.values);
  const auto moved = propagate_free(f, 0.34);
  const double parseval = std::abs(field_energy(moved) / field_energy(f) - 1.0);
  const double compose = max_rel(propagate_free(propagate_free(f, 0.34), 0.07).values, propagate_free(f, 0.41).values);

  double lens = 0.0;
  for (double O : {0.3, 0.41, 0.6, 1.2}) {
    const double fl = 0.25, z2 = 0.07;
    const double I = 1.0 / (1.0 / fl - 1.0 / O);
    const double z = z2 + I;
    lens = std::max(lens, std::abs(fl / (z - z2 - fl) - O / I) / (O / I));
  }
  const bool pass = round_trip <= 1e-12 && parseval <= 1e-12 && compose <= 1e-12 && lens <= 1e-12;
  report(8, "numerical hygiene", pass,
         fmt("fft round trip %.1e; propagation Parseval %.1e; composition %.1e; thin-lens identity %.1e; tol 1e-12",
             round_trip, parseval, compose, lens));
}

// Criterion 9: bit-identical output across thread counts and reruns.
void determinism() {
  ExperimentConfig cfg = load("fig3.conf");
  cfg.noise.enabled = true;
  cfg.noise.seed = 77;
  auto render = [&](ScanMode mode) { return format_scan_file(run_coincidence_scan(cfg, mode), cfg); };
  auto all = [&] {
    std::string s = format_scan_file(run_pump_scan(cfg), cfg);
    for (ScanMode m : {ScanMode::fixed_signal, ScanMode::simultaneous_same, ScanMode::simultaneous_opposite}) s += render(m);
    return s;
  };
  int threads_a = 1, threads_b = 1;
#ifdef _OPENMP
  omp_set_num_threads(1);
  threads_a = omp_get_max_threads();
#endif
  const std::string serial = all();
#ifdef _OPENMP
  omp_set_num_threads(4);
  threads_b = omp_get_max_threads();
#endif
  const std::string parallel = all();
  const std::string again = all();
  report(9, "identical configs give bit-identical output", serial == parallel && parallel == again,
         fmt("%zu bytes; %d vs %d threads %s; rerun %s; noise on, seed %llu", serial.size(), threads_a, threads_b,
             serial == parallel ? "identical" : "DIFFER", parallel == again ? "identical" : "DIFFERS",
             static_cast<unsigned long long>(cfg.noise.seed)));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> steps{imaging, fringes, oracle_equivalence, rho_plus_only, relative_modulus,
                                                 hygiene, determinism};
  for (const auto& step : steps) {
    try {
      step();
    } catch (const std::exception& e) {
      std::printf("FAIL  error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%s\n", failures == 0 ? "all acceptance criteria passed" : "acceptance FAILED");
  return failures == 0 ? 0 : 1;
}
