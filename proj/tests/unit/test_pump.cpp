#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spdcimg/analysis.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/fft.hpp"
#include "spdcimg/oracles.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/tracked_field.hpp"

using namespace spdcimg;

namespace {

PumpSpec double_slit_pump() {
  PumpSpec s;
  s.object = Mask::double_slit(300e-6, 100e-6);
  return s;
}

}  // namespace

TEST_CASE("object field") {
  const Grid g = make_grid(1024, 12.5e-6);
  const auto w = object_field(double_slit_pump(), g);
  CHECK(w.domain == Domain::position);
  CHECK(w.values[512] == cplx(0.0));
  CHECK(w.values[512 + 12] == cplx(1.0));  // x = 150 um, slit centre
  CHECK(w.values[512 - 12] == cplx(1.0));

  PumpSpec gauss;
  gauss.illumination = GaussianBeam{1e-3};
  const auto wg = object_field(gauss, g);
  CHECK(std::norm(wg.values[512 + 12]) == doctest::Approx(std::exp(-2.0 * 0.15 * 0.15)).epsilon(1e-12));

  CHECK_THROWS_AS(object_field(double_slit_pump(), make_grid(1024, 20e-6)), InvalidArgument);
  CHECK_NOTHROW(object_field(PumpSpec{}, make_grid(16, 1e-3)));
}

TEST_CASE("spectrum at the crystal") {
  const auto spec = double_slit_pump();
  const Grid g = make_grid(4096, 12.5e-6);
  const auto w = object_field(spec, g);
  const double kp = spec.k_pump();

  const auto at0 = spectrum_at_crystal(w, 0.0, kp);
  const auto plain = forward_spectrum(w);
  CHECK(at0.plane == SpectrumPlane::crystal);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(at0.V.values[j] - plain.values[j]));
  CHECK(worst < 1e-15);

  // Propagating only rotates phases.
  const auto at = spectrum_at_crystal(w, 0.34, kp);
  worst = 0.0;
  double peak = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    worst = std::max(worst, std::abs(std::abs(at.V.values[j]) - std::abs(plain.values[j])));
    peak = std::max(peak, std::abs(plain.values[j]));
  }
  CHECK(worst / peak < 1e-12);

  // Transforming then propagating equals propagating then transforming.
  const auto other = forward_spectrum(propagate_free(w, 0.34));
  worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(at.V.values[j] - other.values[j]));
  CHECK(worst / peak < 1e-12);
}

TEST_CASE("engine spectrum is band limited to the central half") {
  const auto spec = double_slit_pump();
  const Grid g = make_grid(256, 40e-6);
  const auto es = engine_spectrum(spec, 0.34, g);
  CHECK(es.V.grid.size() == 256);
  double inner = 0.0;
  for (std::size_t j = 0; j < 256; ++j) {
    const std::size_t dist = j > 128 ? j - 128 : 128 - j;
    if (dist >= 64) {
      CHECK(es.V.values[j] == cplx(0.0));
    } else {
      inner = std::max(inner, std::abs(es.V.values[j]));
    }
  }
  CHECK(inner > 0.0);

  // Inside the band it agrees with a fine-grid spectrum.
  const Grid fine = make_grid(4096, 2.5e-6);
  const auto ref = forward_spectrum(object_field(spec, fine));
  CHECK(std::abs(std::abs(es.V.values[128]) - std::abs(ref.values[2048])) < 1e-12 * std::abs(ref.values[2048]));
}

TEST_CASE("imaged pump separation is m d") {
  struct Case {
    double z1, z2, f;
  };
  const auto spec = double_slit_pump();
  for (const Case c : {Case{0.34, 0.56, 0.25}, Case{0.34, 0.16, 0.25}, Case{0.34, 0.07, 0.25}}) {
    const auto ig = oracle::thin_lens_solve(c.z1 + c.z2, std::nullopt, c.f);
    const ExperimentGeometry geo{c.z1, c.z2, c.z2 + ig.I, c.f};
    CAPTURE(ig.m);
    const Grid g = make_grid(8192, 12.5e-6);
    const double span = 1.5 * ig.m * 300e-6;
    const auto pos = linspace(-span, span, 301);
    const auto scan = pump_intensity_scan(spec, geo, g, pos, 0.0);
    const double step = pos[1] - pos[0];
    CHECK(std::abs(peak_separation(scan) - ig.m * 300e-6) < std::max(step, g.dx() * ig.m));
  }
}

TEST_CASE("without a lens the pump shows far-field fringes") {
  const auto spec = double_slit_pump();
  const ExperimentGeometry geo{0.34, 0.0, 0.70, std::nullopt};
  const Grid g = make_grid(4096, 12.5e-6);
  const auto pos = linspace(-3e-3, 3e-3, 301);
  const auto scan = pump_intensity_scan(spec, geo, g, pos, 0.0);

  ScanResult far = scan;
  for (std::size_t i = 0; i < pos.size(); ++i) far.rates[i] = oracle::fraunhofer_double_slit(300e-6, 100e-6, 442e-9, 1.04, pos[i]);
  CHECK(fringe_period(scan) / fringe_period(far) == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("zero slit width reproduces the propagated intensity") {
  const auto spec = double_slit_pump();
  const ExperimentGeometry geo{0.34, 0.0, 0.70, std::nullopt};
  const Grid g = make_grid(4096, 12.5e-6);
  std::vector<double> pos;
  for (std::size_t j = 2048 - 100; j <= 2048 + 100; ++j) pos.push_back(g.x(j));
  const auto scan = pump_intensity_scan(spec, geo, g, pos, 0.0);

  const auto out = propagate_chain(TrackedField(object_field(spec, g)), pump_chain(geo, spec.k_pump()));
  const auto prof = intensity_profile(out);
  double peak = 0.0;
  for (std::size_t j = 0; j < prof.x.size(); ++j) {
    if (std::abs(prof.x[j]) <= pos.back() + 1e-12) peak = std::max(peak, prof.intensity[j]);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) worst = std::max(worst, std::abs(scan.rates[i] - prof.intensity[2048 - 100 + i] / peak));
  CHECK(worst < 1e-12);
  CHECK(scan.mode == ScanMode::pump_intensity);

  const auto smooth = pump_intensity_scan(spec, geo, g, pos, 0.2e-3);
  CHECK(smooth.rates.size() == pos.size());
  CHECK(pump_guard_band_energy(spec, geo, g) < 1e-3);
}
