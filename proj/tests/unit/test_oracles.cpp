#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spdcimg/analysis.hpp"
#include "spdcimg/detection.hpp"
#include "spdcimg/error.hpp"
#include "spdcimg/oracles.hpp"
#include "spdcimg/pump.hpp"
#include "spdcimg/units.hpp"

using namespace spdcimg;
using oracle::thin_lens_solve;

namespace {

ScanResult make_scan(const std::vector<double>& x, const std::vector<double>& y) {
  ScanResult s;
  s.positions = x;
  s.rates = y;
  return s;
}

ScanResult two_peaks(double centre, double sigma) {
  const auto x = linspace(-0.6e-3, 0.6e-3, 101);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = std::exp(-std::pow((x[i] - centre) / sigma, 2) / 2) + std::exp(-std::pow((x[i] + centre) / sigma, 2) / 2);
  }
  return make_scan(x, y);
}

ScanResult fringes(double period) {
  const auto x = linspace(-6e-3, 6e-3, 401);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(std::cos(kPi * x[i] / period), 2);
  return make_scan(x, y);
}

ScanResult noisy(ScanResult s, std::uint64_t seed) {
  s.rates = add_poisson_noise(s.rates, 1e4, seed);
  return s;
}

}  // namespace

TEST_CASE("thin lens solutions") {
  const auto a = thin_lens_solve(0.41, std::nullopt, 0.25);
  CHECK(a.I == doctest::Approx(0.640625).epsilon(1e-14));
  CHECK(a.m == doctest::Approx(1.5625).epsilon(1e-14));
  CHECK(a.at_imaging_condition());

  const auto b = thin_lens_solve(std::nullopt, a.I, 0.25);
  CHECK(b.O == doctest::Approx(0.41).epsilon(1e-14));
  const auto c = thin_lens_solve(0.41, a.I, std::nullopt);
  CHECK(c.f == doctest::Approx(0.25).epsilon(1e-14));

  const auto unit = thin_lens_solve(0.5, std::nullopt, 0.25);
  CHECK(unit.I == doctest::Approx(0.5));
  CHECK(unit.m == doctest::Approx(1.0));

  // f / (I - f) equals O / I at the imaging condition.
  for (double O : {0.3, 0.41, 0.9, 2.0}) {
    const auto g = thin_lens_solve(O, std::nullopt, 0.25);
    CHECK(std::abs(g.f / (g.I - g.f) - g.O / g.I) < 1e-12);
  }

  CHECK_THROWS_AS(thin_lens_solve(0.25, std::nullopt, 0.25), DomainError);
  CHECK_THROWS_AS(thin_lens_solve(0.1, std::nullopt, 0.25), DomainError);
  CHECK_THROWS_AS(thin_lens_solve(std::nullopt, 0.2, 0.25), DomainError);
  CHECK_THROWS_AS(thin_lens_solve(0.41, 0.64, 0.25), InvalidArgument);
  CHECK_THROWS_AS(thin_lens_solve(0.41, std::nullopt, std::nullopt), InvalidArgument);
  CHECK_THROWS_AS(thin_lens_solve(-0.41, std::nullopt, 0.25), InvalidArgument);

  const ExperimentGeometry geo{0.34, 0.07, 0.710625, 0.25};
  const auto ig = oracle::imaging_geometry(geo);
  CHECK(ig.O == doctest::Approx(0.41));
  CHECK(ig.I == doctest::Approx(0.640625));
  CHECK(ig.at_imaging_condition());
  CHECK_THROWS(oracle::imaging_geometry(ExperimentGeometry{0.34, 0.0, 0.7, std::nullopt}));
}

TEST_CASE("ideal image predictions") {
  PumpSpec spec;
  spec.object = Mask::double_slit(300e-6, 100e-6);
  const auto w0 = oracle::object_amplitude(spec);
  const auto ig = thin_lens_solve(0.41, std::nullopt, 0.25);
  const auto x = linspace(-1.2e-3, 1.2e-3, 961);
  const double step = x[1] - x[0];

  const auto same = oracle::predict_coincidence_profile(w0, ig, ScanMode::simultaneous_same, x);
  CHECK(std::abs(peak_separation(make_scan(x, same)) - 0.46875e-3) <= step);
  const auto fixed = oracle::predict_coincidence_profile(w0, ig, ScanMode::fixed_signal, x);
  CHECK(std::abs(peak_separation(make_scan(x, fixed)) - 0.9375e-3) <= step);
  const auto opp = oracle::predict_coincidence_profile(w0, ig, ScanMode::simultaneous_opposite, x, 0.234e-3);
  for (double v : opp) CHECK(v == doctest::Approx(opp.front()));

  // At unit magnification the image is the inverted object.
  PumpSpec offset;
  offset.object = Mask::single_slit(100e-6, 50e-6);
  const auto unit = thin_lens_solve(0.5, std::nullopt, 0.25);
  const auto p = oracle::predict_coincidence_profile(oracle::object_amplitude(offset), unit, ScanMode::pump_intensity,
                                                     std::vector<double>{-100e-6, 100e-6});
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);

  oracle::ImagingGeometry off = ig;
  off.I *= 1.01;
  CHECK_THROWS_AS(oracle::predict_coincidence_profile(w0, off, ScanMode::simultaneous_same, x), DomainError);
}

TEST_CASE("ideal image matches the propagated pump at grid nodes") {
  PumpSpec spec;
  spec.illumination = GaussianBeam{0.3e-3};
  spec.object = Mask::single_slit(60e-6, 400e-6);
  const ExperimentGeometry geo{0.34, 0.07, 0.710625, 0.25};
  const auto ig = oracle::imaging_geometry(geo);
  const Grid g = make_grid(4096, 12.5e-6);
  std::vector<double> pos;
  for (std::size_t j = 2048 + 40; j >= 2048 - 40; --j) pos.push_back(-ig.m * g.x(j));
  const auto scan = pump_intensity_scan(spec, geo, g, pos, 0.0);
  const auto pred = oracle::predict_coincidence_profile(oracle::object_amplitude(spec), ig, ScanMode::simultaneous_same, pos);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    CAPTURE(pos[i]);
    CHECK(std::abs(scan.rates[i] - pred[i]) < 1e-6);
  }
}

TEST_CASE("fraunhofer double slit") {
  const double d = 300e-6, a = 100e-6, l = 442e-9, D = 1.04;
  CHECK(oracle::fraunhofer_double_slit(d, a, l, D, 0.0) == 1.0);
  CHECK(oracle::fraunhofer_double_slit(d, a, l, D, l * D / (2 * d)) < 1e-20);
  CHECK(oracle::fraunhofer_double_slit(d, a, l, D, l * D / a) < 1e-20);
  CHECK(oracle::fraunhofer_double_slit(d, a, l, D, l * D / d) == doctest::Approx(std::pow(std::sin(kPi / 3) / (kPi / 3), 2)));
  CHECK(fringe_period(make_scan(linspace(-3e-3, 3e-3, 301), [&] {
          std::vector<double> y;
          for (double x : linspace(-3e-3, 3e-3, 301)) y.push_back(oracle::fraunhofer_double_slit(d, a, l, D, x));
          return y;
        }())) == doctest::Approx(l * D / d).epsilon(0.06));
}

TEST_CASE("reduced lens-arm kernel") {
  const double k = wavenumber(884e-9);
  CHECK(std::abs(oracle::reduced_arm_kernel(0.07, 0.25, 0.710625, k, 1e-4, 3e4)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(oracle::reduced_arm_kernel(0.07, 0.25, 0.32, k, 0.0, 1.0), DomainError);

  const auto c = oracle::compare_arm_kernel(0.07, 0.25, 0.710625);
  CHECK(std::abs(c.linear_residual()) < 1e-12);
  CHECK(c.linear_reduced == doctest::Approx(-0.41 / 0.640625));
  CHECK(c.quadratic_reduced == doctest::Approx(0.07 - 0.25 + 0.0625 / 0.390625));
  CHECK(c.quadratic_chain == doctest::Approx(-0.34));
  CHECK(std::abs(c.quadratic_residual()) > 0.3);
}

TEST_CASE("ray matrices") {
  const double k = wavenumber(884e-9);
  const auto m = oracle::ray_matrix(ArmChain{k, {FreeSpace{0.07}, ThinLens{0.25}, FreeSpace{0.640625}}});
  CHECK(m.A * m.D - m.B * m.C == doctest::Approx(1.0));
  CHECK(m.A == doctest::Approx(-1.5625));
  CHECK(m.B / m.A == doctest::Approx(-0.34));
  CHECK_THROWS(oracle::ray_matrix(ArmChain{k, {Aperture{Mask::unit()}}}));
  CHECK_THROWS_AS(oracle::chain_plane_wave_kernel(ArmChain{k, {ThinLens{0.25}, FreeSpace{0.25}}}, 0.0, 1.0), DomainError);
  CHECK(oracle::chain_plane_wave_kernel(ArmChain{k, {}}, 1e-3, 2e3) == std::polar(1.0, 2.0));
}

TEST_CASE("fringe period estimator") {
  CHECK(fringe_period(fringes(1.5e-3)) == doctest::Approx(1.5e-3).epsilon(0.01));
  CHECK(fringe_period(noisy(fringes(1.5e-3), 3)) == doctest::Approx(1.5e-3).epsilon(0.02));
  auto scaled = fringes(1.5e-3);
  for (auto& r : scaled.rates) r *= 7.5;
  CHECK(fringe_period(scaled) == doctest::Approx(fringe_period(fringes(1.5e-3))).epsilon(1e-12));

  const auto x = linspace(-6e-3, 6e-3, 401);
  CHECK_THROWS_AS(fringe_period(make_scan(x, std::vector<double>(x.size(), 2.0))), DomainError);
  CHECK_THROWS_AS(fringe_period(fringes(6e-3)), DomainError);
  auto uneven = fringes(1.5e-3);
  uneven.positions[7] += 1e-6;
  CHECK_THROWS_AS(fringe_period(uneven), InvalidArgument);
}

TEST_CASE("peak separation estimator") {
  const auto s = two_peaks(0.234e-3, 0.05e-3);
  const double step = s.positions[1] - s.positions[0];
  CHECK(std::abs(peak_separation(s) - 0.468e-3) <= step);
  CHECK(peak_separation(noisy(s, 9)) == doctest::Approx(0.468e-3).epsilon(0.02));
  auto scaled = s;
  for (auto& r : scaled.rates) r *= 1e3;
  CHECK(peak_separation(scaled) == doctest::Approx(peak_separation(s)).epsilon(1e-12));

  const auto one = two_peaks(0.0, 0.05e-3);
  CHECK_THROWS_AS(peak_separation(one), DomainError);
  CHECK(visibility(make_scan({0, 1, 2}, {1, 3, 1})) == doctest::Approx(0.5));
}

TEST_CASE("relative coordinate factor") {
  const auto ig = thin_lens_solve(0.41, std::nullopt, 0.25);
  const double kp = wavenumber(442e-9);
  const cplx ref = oracle::relative_factor_closed_form(ig, 0.34, kp, 0.0);
  for (double r : linspace(-1.2e-3, 1.2e-3, 13)) {
    const cplx cf = oracle::relative_factor_closed_form(ig, 0.34, kp, r);
    const cplx qd = oracle::relative_factor_quadrature(ig, 0.34, kp, r);
    CHECK(std::abs(qd - cf) < 1e-6 * std::abs(cf));
    CHECK(std::abs(std::abs(qd) / std::abs(ref) - 1.0) < 1e-6);
  }
  CHECK_THROWS(oracle::relative_factor_closed_form(ig, 0.0, kp, 1e-4));
  CHECK_THROWS(oracle::relative_factor_quadrature(ig, 0.0, kp, 1e-4));
}
