#include "spdcimg/coincidence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "spdcimg/detection.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/tracked_field.hpp"
#include "spdcimg/units.hpp"

namespace spdcimg {
namespace {

constexpr double kGuardFraction = 0.1;

void check_sizes(const SampledField& V, std::span<const cplx> a, std::span<const cplx> b, std::span<const double> w) {
  const std::size_t n = V.size();
  if (a.size() != n || b.size() != n || w.size() != n) throw InvalidArgument("kernel rows and weights must match the spectrum grid");
  if (V.domain != Domain::momentum) throw InvalidArgument("coincidence engine expects a momentum-domain spectrum");
}

// Backward DFT (length 2n) of g[K] = V[K - n/2] dq^2, K = q'_i index + q'_s index.
ComplexVector pump_transform(const SampledField& V) {
  const std::size_t n = V.size();
  ComplexVector g(2 * n, cplx{0.0, 0.0});
  const double dq2 = V.grid.dq() * V.grid.dq();
  for (std::size_t j = 0; j < n; ++j) g[j + n / 2] = V.values[j] * dq2;
  fft::dft(g, +1);
  return g;
}

ComplexVector weighted_row_transform(std::span<const cplx> row, std::span<const double> w) {
  const std::size_t n = row.size();
  ComplexVector a(2 * n, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) a[j] = row[j] * w[j];
  fft::dft(a, -1);
  return a;
}

cplx contract(const ComplexVector& a, const ComplexVector& b, const ComplexVector& g) {
  cplx sum{0.0, 0.0};
  for (std::size_t m = 0; m < g.size(); ++m) sum += a[m] * b[m] * g[m];
  return sum / static_cast<double>(g.size());
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<double> unique_sorted(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_of(const std::vector<double>& sorted, double x) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

bool same_chain(const ArmChain& a, const ArmChain& b) {
  if (a.k != b.k || a.elements.size() != b.elements.size()) return false;
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    const auto* fa = std::get_if<FreeSpace>(&a.elements[i]);
    const auto* fb = std::get_if<FreeSpace>(&b.elements[i]);
    const auto* la = std::get_if<ThinLens>(&a.elements[i]);
    const auto* lb = std::get_if<ThinLens>(&b.elements[i]);
    if (fa && fb && fa->z == fb->z) continue;
    if (la && lb && la->f == lb->f) continue;
    return false;
  }
  return true;
}

void require_in_window(std::span<const double> rho, double limit, const char* arm) {
  for (double r : rho) {
    if (std::abs(r) > limit) {
      std::ostringstream msg;
      msg << arm << " position " << r << " m lies outside the guard band (|rho| <= " << limit
          << " m); enlarge the coincidence grid";
      throw InvalidArgument(msg.str());
    }
  }
}

}  // namespace

std::vector<double> SpectralWindow::weights(const Grid& grid) const {
  if (!(taper >= 0.0 && taper < 1.0)) throw InvalidArgument("spectral taper must lie in [0, 1)");
  const double qmax = grid.q_max();
  const double edge = (1.0 - taper) * qmax;
  std::vector<double> w(grid.size(), 1.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double q = std::abs(grid.q(j));
    if (q <= edge) continue;
    const double s = (q - edge) / (taper * qmax);
    w[j] = s >= 1.0 ? 0.0 : 1.0 / (1.0 + std::exp(1.0 / (1.0 - s) - 1.0 / s));
  }
  return w;
}

void require_half_band_support(const SampledField& spectrum) {
  const std::size_t n = spectrum.size();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t dist = j > n / 2 ? j - n / 2 : n / 2 - j;
    if (dist >= n / 4 && spectrum.values[j] != cplx{0.0, 0.0}) {
      throw InvalidArgument("pump spectrum must vanish outside the central half of the q grid");
    }
  }
}

cplx coincidence_amplitude_direct(const SampledField& V, std::span<const cplx> idler_row,
                                  std::span<const cplx> signal_row, std::span<const double> weights) {
  check_sizes(V, idler_row, signal_row, weights);
  const auto n = static_cast<long long>(V.size());
  const double dq2 = V.grid.dq() * V.grid.dq();
  cplx sum{0.0, 0.0};
  for (long long ji = 0; ji < n; ++ji) {
    const cplx a = idler_row[ji] * weights[ji];
    cplx inner{0.0, 0.0};
    for (long long js = 0; js < n; ++js) {
      const long long Q = ji + js - n / 2;
      if (Q < 0 || Q >= n) continue;
      inner += V.values[Q] * signal_row[js] * weights[js];
    }
    sum += a * inner;
  }
  return sum * dq2;
}

cplx coincidence_amplitude_fast(const SampledField& V, std::span<const cplx> idler_row,
                                std::span<const cplx> signal_row, std::span<const double> weights) {
  check_sizes(V, idler_row, signal_row, weights);
  return contract(weighted_row_transform(idler_row, weights), weighted_row_transform(signal_row, weights),
                  pump_transform(V));
}

ArmChain twin_arm_chain(const ExperimentGeometry& geometry, double k) {
  geometry.validate();
  ArmChain chain{k, {}};
  if (geometry.f) {
    chain.elements.emplace_back(FreeSpace{geometry.z2});
    chain.elements.emplace_back(ThinLens{*geometry.f});
    chain.elements.emplace_back(FreeSpace{geometry.z - geometry.z2});
  } else {
    chain.elements.emplace_back(FreeSpace{geometry.z});
  }
  return chain;
}

CoincidenceModel make_coincidence_model(const PumpSpec& pump, const ExperimentGeometry& geometry, const Grid& grid,
                                        SpectralWindow window) {
  geometry.validate();
  PumpSpectrum spectrum = engine_spectrum(pump, geometry.z1, grid);
  require_half_band_support(spectrum.V);
  const double ks = pump.k_twin();
  CoincidenceModel model{std::move(spectrum), twin_arm_chain(geometry, ks), twin_arm_chain(geometry, ks), grid,
                         window, true};
  (void)window.weights(grid);
  return model;
}

double arm_scan_limit(const ArmChain& chain, const Grid& grid) {
  return (0.5 - kGuardFraction) * std::abs(envelope_steps(chain).scale) * grid.span();
}

ComplexVector coincidence_amplitudes(const CoincidenceModel& model, std::span<const double> rho_i,
                                     std::span<const double> rho_s, Method method) {
  if (rho_i.size() != rho_s.size()) throw InvalidArgument("rho_i and rho_s must have the same length");
  require_in_window(rho_i, arm_scan_limit(model.idler, model.grid), "idler");
  require_in_window(rho_s, arm_scan_limit(model.signal, model.grid), "signal");

  const SampledField& V = model.crystal_spectrum.V;
  const std::vector<double> w = model.window.weights(model.grid);
  // Identical arms share one kernel over the union of positions.
  const bool shared = same_chain(model.idler, model.signal);
  std::vector<double> ui = unique_sorted(rho_i);
  std::vector<double> us = unique_sorted(rho_s);
  if (shared) {
    std::vector<double> all(ui);
    all.insert(all.end(), us.begin(), us.end());
    ui = us = unique_sorted(all);
  }
  const ArmKernel ki = build_arm_kernel(model.idler, ui, model.grid);
  std::optional<ArmKernel> ks_own;
  if (!shared) ks_own = build_arm_kernel(model.signal, us, model.grid);
  const ArmKernel& ks = shared ? ki : *ks_own;

  ComplexVector out(rho_i.size());
  const auto count = static_cast<long long>(rho_i.size());
  if (method == Method::direct) {
#if defined(SPDCIMG_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (long long p = 0; p < count; ++p) {
      out[p] = coincidence_amplitude_direct(V, ki.row(index_of(ui, rho_i[p])), ks.row(index_of(us, rho_s[p])), w);
    }
    return out;
  }

  const ComplexVector g = pump_transform(V);
  std::vector<ComplexVector> ai(ui.size()), as_own(shared ? 0 : us.size());
  const auto ni = static_cast<long long>(ui.size());
  const auto ns = static_cast<long long>(as_own.size());
#if defined(SPDCIMG_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long r = 0; r < ni; ++r) ai[r] = weighted_row_transform(ki.row(r), w);
#if defined(SPDCIMG_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long r = 0; r < ns; ++r) as_own[r] = weighted_row_transform(ks.row(r), w);
  const std::vector<ComplexVector>& as = shared ? ai : as_own;
#if defined(SPDCIMG_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long p = 0; p < count; ++p) {
    out[p] = contract(ai[index_of(ui, rho_i[p])], as[index_of(us, rho_s[p])], g);
  }
  return out;
}

ScanResult run_scan(const ScanConfig& config, const CoincidenceModel& model, Method method) {
  if (config.mode == ScanMode::pump_intensity) throw InvalidArgument("pump scans go through pump_intensity_scan");
  if (config.positions.empty()) throw InvalidArgument("scan has no positions");
  if (config.slit_width < 0.0) throw InvalidArgument("slit width must be non-negative");
  const bool slit = config.slit_width > 0.0;
  const QuadratureRule moving = slit ? gauss_legendre(config.scanned_nodes) : QuadratureRule{{0.0}, {1.0}};
  const QuadratureRule fixed = slit ? gauss_legendre(config.fixed_nodes) : QuadratureRule{{0.0}, {1.0}};
  const double c = config.fixed_position;
  const double sw = config.slit_width;

  const bool idler_moves = config.mode != ScanMode::fixed_idler;
  const bool signal_moves = config.mode != ScanMode::fixed_signal;
  const QuadratureRule& ri = idler_moves ? moving : fixed;
  const QuadratureRule& rs = signal_moves ? moving : fixed;

  std::vector<double> rho_i, rho_s, weight;
  const std::size_t per_point = ri.nodes.size() * rs.nodes.size();
  rho_i.reserve(config.positions.size() * per_point);
  rho_s.reserve(rho_i.capacity());
  weight.reserve(rho_i.capacity());
  for (double p : config.positions) {
    double ci = 0.0, cs = 0.0;
    switch (config.mode) {
      case ScanMode::fixed_signal: ci = p; cs = c; break;
      case ScanMode::fixed_idler: ci = c; cs = p; break;
      case ScanMode::simultaneous_same: ci = p; cs = p; break;
      case ScanMode::simultaneous_opposite: ci = c + p; cs = c - p; break;
      case ScanMode::pump_intensity: break;
    }
    for (std::size_t a = 0; a < ri.nodes.size(); ++a) {
      for (std::size_t b = 0; b < rs.nodes.size(); ++b) {
        rho_i.push_back(ci + sw * ri.nodes[a]);
        rho_s.push_back(cs + sw * rs.nodes[b]);
        weight.push_back(ri.weights[a] * rs.weights[b]);
      }
    }
  }

  const ComplexVector amp = coincidence_amplitudes(model, rho_i, rho_s, method);
  ScanResult out;
  out.mode = config.mode;
  out.positions = config.positions;
  out.rates.assign(config.positions.size(), 0.0);
  for (std::size_t p = 0; p < config.positions.size(); ++p) {
    double sum = 0.0;
    for (std::size_t t = 0; t < per_point; ++t) sum += weight[p * per_point + t] * std::norm(amp[p * per_point + t]);
    out.rates[p] = sum;
  }
  const double peak = *std::max_element(out.rates.begin(), out.rates.end());
  if (peak > 0.0) {
    for (auto& r : out.rates) r /= peak;
  }
  out.normalization = "max-normalised coincidence rate";
  if (config.noise) {
    out.rates = add_poisson_noise(out.rates, config.noise->mean_counts, config.noise->seed);
    out.normalization = "Poisson counts, mean at peak " + sci(config.noise->mean_counts) + ", seed " +
                        std::to_string(config.noise->seed);
  }
  out.metadata.emplace_back("coincidence_n", std::to_string(model.grid.size()));
  out.metadata.emplace_back("coincidence_dx_m", sci(model.grid.dx()));
  out.metadata.emplace_back("spectral_taper", sci(model.window.taper));
  out.metadata.emplace_back("slit_nodes", std::to_string(ri.nodes.size()) + "x" + std::to_string(rs.nodes.size()));
  out.metadata.emplace_back("method", method == Method::fast ? "fast" : "direct");
  return out;
}

std::vector<double> coincidence_map(const CoincidenceModel& model, std::span<const double> rho_i,
                                    std::span<const double> rho_s, Method method) {
  std::vector<double> ri, rs;
  ri.reserve(rho_i.size() * rho_s.size());
  rs.reserve(ri.capacity());
  for (double a : rho_i) {
    for (double b : rho_s) {
      ri.push_back(a);
      rs.push_back(b);
    }
  }
  const ComplexVector amp = coincidence_amplitudes(model, ri, rs, method);
  std::vector<double> out(amp.size());
  for (std::size_t i = 0; i < amp.size(); ++i) out[i] = std::norm(amp[i]);
  return out;
}

}  // namespace spdcimg
