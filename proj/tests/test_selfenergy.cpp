#include <doctest.h>

#include <cmath>

#include "gmoment/selfenergy.hpp"

using namespace gmoment;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("field profile and Gauss-law normalization") {
  // r = r0 with unit constants: 1/(2 pi^2 r0^2)
  CHECK(field_profile(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / (2 * kPi * kPi)));
  // r -> 2r scales by 1/8
  CHECK(field_profile(2.0, 1.0, 1.0, 1.0) ==
        doctest::Approx(field_profile(1.0, 1.0, 1.0, 1.0) / 8.0));
  // flux through the four-dimensional sphere is r-independent
  for (double r : {0.5, 1.0, 3.0, 17.0}) {
    double flux = field_profile(r, 2.0, 1.5, 0.7) * 2 * kPi * kPi * r * r * r;
    CHECK(flux == doctest::Approx(2.0 * 1.5 / 0.7));
  }
  CHECK_THROWS_AS(field_profile(0.0, 1, 1, 1), Error);
  CHECK_THROWS_AS(field_profile(-1.0, 1, 1, 1), Error);
}

TEST_CASE("quadrature matches the closed form over the parameter grid") {
  for (double r0 : {0.1, 1.0, 10.0})
    for (double e : {0.1, 1.0})
      for (double eps0 : {0.5, 1.0}) {
        QuadratureConfig cfg;
        cfg.r0 = r0;
        cfg.e_charge = e;
        cfg.eps0 = eps0;
        auto res = self_energy_quadrature(cfg);
        auto want = closed_form_value(r0, e, eps0);
        CHECK(std::abs(res.value - want) <= 1e-10 * std::abs(want));
        // pure imaginary to machine precision
        CHECK(std::abs(res.value.real()) < 1e-14 * std::abs(res.value));
      }
}

TEST_CASE("unit-constant value is i/(8 pi^2)") {
  QuadratureConfig cfg;
  auto res = self_energy_quadrature(cfg);
  CHECK(res.value.imag() == doctest::Approx(1.0 / (8 * kPi * kPi)).epsilon(1e-12));
  CHECK(res.value.imag() == doctest::Approx(0.0126651).epsilon(1e-5));
}

TEST_CASE("scaling laws via log-log slope fits") {
  auto value_at = [](double r0, double e, double eps0) {
    QuadratureConfig cfg;
    cfg.r0 = r0;
    cfg.e_charge = e;
    cfg.eps0 = eps0;
    return std::abs(self_energy_quadrature(cfg).value);
  };
  auto slope = [](const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
      double lx = std::log(x), ly = std::log(y);
      sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  std::vector<std::pair<double, double>> by_r0, by_e, by_eps0;
  for (double v : {0.5, 1.0, 2.0, 4.0}) {
    by_r0.push_back({v, value_at(v, 1, 1)});
    by_e.push_back({v, value_at(1, v, 1)});
    by_eps0.push_back({v, value_at(1, 1, v)});
  }
  CHECK(std::abs(slope(by_r0) - (-1.0)) < 1e-6);
  CHECK(std::abs(slope(by_e) - 2.0) < 1e-6);
  CHECK(std::abs(slope(by_eps0) - (-1.0)) < 1e-6);
}

TEST_CASE("doubling rules") {
  QuadratureConfig cfg;
  auto base = self_energy_quadrature(cfg).value;
  cfg.r0 = 2.0;
  CHECK(std::abs(self_energy_quadrature(cfg).value - base / 2.0) < 1e-10 * std::abs(base));
  cfg.r0 = 1.0;
  cfg.e_charge = 2.0;
  CHECK(std::abs(self_energy_quadrature(cfg).value - 4.0 * base) < 1e-9 * std::abs(base));
}

TEST_CASE("closed form substitutions") {
  // r0 = pi/m gives i e^2 m / (8 pi^3 eps0)
  ScalarCoeff dm = closed_form_delta_m();
  ScalarCoeff with_r0 = dm.substitute(
      {{sym::r0, ScalarCoeff::sym(sym::pi) * ScalarCoeff::sym(sym::m, -1)}});
  ScalarCoeff want = ScalarCoeff::i() * ScalarCoeff::rational(1, 8) * ScalarCoeff::sym(sym::e, 2) *
                     ScalarCoeff::sym(sym::m) * ScalarCoeff::sym(sym::pi, -3) *
                     ScalarCoeff::sym(sym::eps0, -1);
  CHECK(with_r0 == want);
  // with e^2 = 4 pi eps0 alpha as well: i alpha m / (2 pi^2)
  ScalarCoeff bound = with_r0.substitute_square(
      sym::e, ScalarCoeff::rational(4) * ScalarCoeff::sym(sym::pi) * ScalarCoeff::sym(sym::eps0) *
                  ScalarCoeff::sym(sym::alpha));
  CHECK(bound == ScalarCoeff::i() * ScalarCoeff::rational(1, 2) * ScalarCoeff::sym(sym::alpha) *
                     ScalarCoeff::sym(sym::m) * ScalarCoeff::sym(sym::pi, -2));
}
