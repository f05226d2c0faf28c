#include "gmoment/selfenergy.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gmoment {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double field_profile(double r, double r0, double e_charge, double eps0) {
  if (!(r > 0)) throw Error("field_profile: r must be positive");
  return r0 * e_charge / (2.0 * kPi * kPi * eps0 * r * r * r);
}

QuadratureResult self_energy_quadrature(const QuadratureConfig& cfg) {
  const double upper = cfg.cutoff_factor * cfg.r0;
  auto integrand = [&](double r) {
    double E = field_profile(r, cfg.r0, cfg.e_charge, cfg.eps0);
    return E * E * 2.0 * kPi * kPi * r * r * r;
  };
  double err = 0;
  double body = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, cfg.r0, upper, cfg.max_depth, cfg.rel_tol, &err);
  // integrand ~ C / r^3 beyond the cutoff: Integral_R^inf r^-3 = 1/(2 R^2)
  double C = cfg.r0 * cfg.r0 * cfg.e_charge * cfg.e_charge / (2.0 * kPi * kPi * cfg.eps0 * cfg.eps0);
  double tail = C / (2.0 * upper * upper);
  double total = (cfg.eps0 / (2.0 * cfg.r0)) * (body + tail);
  double abs_err = (cfg.eps0 / (2.0 * cfg.r0)) * err;
  if (std::abs(total) > 0 && abs_err / std::abs(total) > 1e-10)
    throw Error("self_energy_quadrature: tolerance not reached; error estimate " +
                std::to_string(abs_err));
  // the measure rotation i dr makes the result pure imaginary
  return {std::complex<double>(0.0, total), abs_err};
}

ScalarCoeff closed_form_delta_m() {
  return ScalarCoeff::i() * ScalarCoeff::rational(1, 8) * ScalarCoeff::sym(sym::e, 2) *
         ScalarCoeff::sym(sym::pi, -2) * ScalarCoeff::sym(sym::eps0, -1) *
         ScalarCoeff::sym(sym::r0, -1);
}

std::complex<double> closed_form_value(double r0, double e_charge, double eps0) {
  std::map<SymbolId, std::complex<double>> bind{
      {sym::e, e_charge}, {sym::pi, kPi}, {sym::eps0, eps0}, {sym::r0, r0}};
  return closed_form_delta_m().to_float(bind);
}

}  // namespace gmoment
