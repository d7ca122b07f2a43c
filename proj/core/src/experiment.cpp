#include "spdcimg/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spdcimg/analysis.hpp"
#include "spdcimg/detection.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/oracles.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

constexpr double kPumpMargin = 2.0;
constexpr double kCoincidenceMargin = 1.25;

std::size_t next_power_of_two(double v) {
  std::size_t n = 8;
  while (static_cast<double>(n) < v) n *= 2;
  return n;
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

void require_lens(const ExperimentConfig& config, const char* what) {
  if (!config.geometry.f) throw ConfigError(0, std::string(what) + " needs a lens in [geometry]");
}

}  // namespace

GridChoice choose_pump_grid(const ExperimentConfig& config) {
  const PumpSpec spec = make_pump_spec(config);
  const ArmChain chain = pump_chain(config.geometry, spec.k_pump());
  const double need = spec.wavelength * envelope_steps(chain).max_distance();  // n dx^2 lower bound
  const std::size_t n = config.grid.n;
  const double nn = static_cast<double>(n);

  if (config.grid.dx) {
    const double dx = *config.grid.dx;
    return {make_grid(n, dx), false, nn * dx * dx / need, "dx from config"};
  }
  const double lower = std::sqrt(kPumpMargin * need / nn);
  const double feature = spec.object.min_feature();
  if (feature <= 0.0) {
    return {make_grid(n, lower), true, kPumpMargin, "auto dx from the free-space sampling bound"};
  }
  const double dx = feature / 8.0;
  if (dx < lower) {
    std::ostringstream msg;
    msg << "pump grid: dx = a/8 = " << dx << " m is below the sampling bound " << lower
        << " m; use n >= " << next_power_of_two(kPumpMargin * need / (dx * dx));
    throw ConfigError(0, msg.str());
  }
  return {make_grid(n, dx), true, nn * dx * dx / need, "auto dx = a/8"};
}

GridChoice choose_coincidence_grid(const ExperimentConfig& config) {
  const PumpSpec spec = make_pump_spec(config);
  const ArmChain arm = twin_arm_chain(config.geometry, spec.k_twin());
  const double lambda_s = 2.0 * spec.wavelength;
  const double need = std::max(lambda_s * envelope_steps(arm).max_distance(), 0.5 * spec.wavelength * config.geometry.z1);
  const std::size_t n = config.grid.coincidence_n;
  const double nn = static_cast<double>(n);
  if (config.grid.coincidence_dx) {
    const double dx = *config.grid.coincidence_dx;
    return {make_grid(n, dx), false, nn * dx * dx / need, "coincidence dx from config"};
  }
  const double dx = std::sqrt(kCoincidenceMargin * need / nn);
  return {make_grid(n, dx), true, kCoincidenceMargin, "auto dx from the arm sampling bound"};
}

std::vector<double> scan_positions(const ExperimentConfig& config, ScanMode mode) {
  const double r = config.detection.range;
  const bool fixed = mode == ScanMode::fixed_signal || mode == ScanMode::fixed_idler;
  const double half = fixed ? 2.0 * r : r;
  return linspace(-half, half, config.detection.steps);
}

ScanResult run_pump_scan(const ExperimentConfig& config) {
  const PumpSpec spec = make_pump_spec(config);
  const GridChoice g = choose_pump_grid(config);
  const auto positions = scan_positions(config, ScanMode::pump_intensity);
  ScanResult r = pump_intensity_scan(spec, config.geometry, g.grid, positions, config.detection.slit_width);
  r.metadata.emplace_back("pump_n", std::to_string(g.grid.size()));
  r.metadata.emplace_back("pump_dx_m", format("%.6e", g.grid.dx()));
  r.metadata.emplace_back("pump_sampling_margin", format("%.3f", g.margin));
  r.metadata.emplace_back("pump_guard_band_energy", format("%.3e", pump_guard_band_energy(spec, config.geometry, g.grid)));
  if (config.noise.enabled) {
    r.rates = add_poisson_noise(r.rates, config.noise.mean_counts, config.noise.seed);
    r.normalization = "Poisson counts, mean at peak " + format("%g", config.noise.mean_counts) + ", seed " +
                      std::to_string(config.noise.seed);
  }
  return r;
}

CoincidenceModel build_coincidence_model(const ExperimentConfig& config) {
  const GridChoice g = choose_coincidence_grid(config);
  return make_coincidence_model(make_pump_spec(config), config.geometry, g.grid, SpectralWindow{config.grid.taper});
}

ScanConfig make_scan_config(const ExperimentConfig& config, ScanMode mode) {
  if (mode == ScanMode::pump_intensity) throw InvalidArgument("pump scans are not coincidence scans");
  ScanConfig sc;
  sc.mode = mode;
  sc.positions = scan_positions(config, mode);
  sc.fixed_position = config.detection.fixed;
  sc.slit_width = config.detection.slit_width;
  if (config.noise.enabled) sc.noise = NoiseSpec{config.noise.mean_counts, config.noise.seed};
  return sc;
}

ScanResult run_coincidence_scan(const ExperimentConfig& config, ScanMode mode, Method method) {
  const GridChoice g = choose_coincidence_grid(config);
  const CoincidenceModel model =
      make_coincidence_model(make_pump_spec(config), config.geometry, g.grid, SpectralWindow{config.grid.taper});
  ScanResult r = run_scan(make_scan_config(config, mode), model, method);
  r.metadata.emplace_back("coincidence_sampling_margin", format("%.3f", g.margin));
  r.metadata.emplace_back("degenerate", "true (k_s = k_i = k_p/2)");
  return r;
}

bool RatioCheck::pass() const { return std::abs(measured / expected - 1.0) <= tolerance; }

bool FigureReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

std::string FigureReport::summary() const {
  std::ostringstream out;
  out << "# " << name << "\n";
  for (const auto& [k, v] : measurements) out << k << " = " << format("%.6g", v) << "\n";
  for (const auto& c : checks) {
    out << (c.pass() ? "PASS " : "FAIL ") << c.name << ": measured " << format("%.5f", c.measured) << ", expected "
        << format("%.5f", c.expected) << " +/- " << format("%.1f%%", 100.0 * c.tolerance) << "\n";
  }
  out << (pass() ? "overall: PASS" : "overall: FAIL") << "\n";
  return out.str();
}

FigureReport reproduce_fig2(const ExperimentConfig& config) {
  if (config.geometry.f) throw ConfigError(0, "reproduce-fig2 uses the no-lens geometry; remove f from [geometry]");
  FigureReport rep;
  rep.name = "fig2: angular spectrum transfer without a lens";
  ScanResult pump = run_pump_scan(config);
  ScanResult fixed = run_coincidence_scan(config, ScanMode::fixed_signal);
  ScanResult same = run_coincidence_scan(config, ScanMode::simultaneous_same);
  const double p_pump = fringe_period(pump);
  const double p_fixed = fringe_period(fixed);
  const double p_same = fringe_period(same);
  rep.measurements = {{"pump_period_mm", p_pump * 1e3},
                      {"fixed_period_mm", p_fixed * 1e3},
                      {"same_period_mm", p_same * 1e3}};
  rep.checks = {{"same / pump period", p_same / p_pump, 1.0, 0.03},
                {"fixed / pump period", p_fixed / p_pump, 2.0, 0.03}};
  if (config.object.kind == ObjectKind::double_slit) {
    // Far-field pattern read through the same estimator, so its envelope bias cancels.
    const double D = config.geometry.z1 + config.geometry.z;
    ScanResult far = pump;
    for (std::size_t i = 0; i < far.positions.size(); ++i) {
      far.rates[i] = oracle::fraunhofer_double_slit(config.object.separation, config.object.width,
                                                    config.pump.wavelength, D, far.positions[i]);
    }
    const double p_far = fringe_period(far);
    rep.measurements.emplace_back("lambda_D_over_d_mm", config.pump.wavelength * D / config.object.separation * 1e3);
    rep.measurements.emplace_back("fraunhofer_period_mm", p_far * 1e3);
    rep.checks.push_back({"pump / Fraunhofer period", p_pump / p_far, 1.0, 0.03});
  }
  rep.scans = {{"fig2_pump", std::move(pump)}, {"fig2_fixed", std::move(fixed)}, {"fig2_same", std::move(same)}};
  return rep;
}

FigureReport reproduce_fig3(const ExperimentConfig& config) {
  require_lens(config, "reproduce-fig3");
  FigureReport rep;
  rep.name = "fig3: coincidence imaging through the lens";
  ScanResult pump = run_pump_scan(config);
  ScanResult fixed = run_coincidence_scan(config, ScanMode::fixed_signal);
  ScanResult same = run_coincidence_scan(config, ScanMode::simultaneous_same);
  const double s_pump = peak_separation(pump);
  const double s_fixed = peak_separation(fixed);
  const double s_same = peak_separation(same);
  const oracle::ImagingGeometry ig = oracle::imaging_geometry(config.geometry);
  rep.measurements = {{"pump_separation_mm", s_pump * 1e3},
                      {"fixed_separation_mm", s_fixed * 1e3},
                      {"same_separation_mm", s_same * 1e3},
                      {"magnification_I_over_O", ig.m},
                      {"imaging_mismatch", config.geometry.imaging_mismatch()}};
  if (config.object.kind == ObjectKind::double_slit) {
    rep.checks.push_back({"pump separation / d", s_pump / config.object.separation, ig.m, 0.05});
  }
  rep.checks.push_back({"fixed / pump separation", s_fixed / s_pump, 2.0, 0.03});
  rep.checks.push_back({"same / pump separation", s_same / s_pump, 1.0, 0.03});
  rep.scans = {{"fig3_pump", std::move(pump)}, {"fig3_fixed", std::move(fixed)}, {"fig3_same", std::move(same)}};
  return rep;
}

}  // namespace spdcimg
