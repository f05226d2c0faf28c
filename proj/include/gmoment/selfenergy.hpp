#pragma once

// Numeric verification of the self-energy estimate: the four-dimensional
// Coulomb field, its Gauss-law normalization, and the radial energy
// integral against the closed form i e^2 / (8 pi^2 eps0 r0).

#include <complex>

#include "gmoment/scalar.hpp"

namespace gmoment {

struct QuadratureConfig {
  double r0 = 1.0;
  double e_charge = 1.0;
  double eps0 = 1.0;
  double cutoff_factor = 1e6;  // upper limit = cutoff_factor * r0, analytic tail beyond
  double rel_tol = 1e-12;
  int max_depth = 40;
};

struct QuadratureResult {
  std::complex<double> value;  // pure imaginary by construction
  double error_estimate;       // absolute, from the adaptive scheme
};

// |E~(r)| = r0 e / (2 pi^2 eps0 r^3); r must be positive
double field_profile(double r, double r0, double e_charge, double eps0);

// dm = (eps0 / 2 r0) * Integral_{r0}^inf |E~|^2 * 2 pi^2 r^3 * i dr
QuadratureResult self_energy_quadrature(const QuadratureConfig& cfg);

// exact i e^2 / (8 pi^2 eps0 r0), as a symbolic coefficient
ScalarCoeff closed_form_delta_m();

// closed form evaluated at numeric parameters
std::complex<double> closed_form_value(double r0, double e_charge, double eps0);

}  // namespace gmoment
