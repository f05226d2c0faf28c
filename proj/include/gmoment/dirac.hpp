#pragma once

// Derivation chain of the difference-equation section: pseudo-unitarity and
// hermiticity conditions, the quantization condition in spectral form, the
// wave equation obtained by CBH + conjugation expansion, and the rewriting
// of the first-order term V1 into its Pauli forms.

#include <optional>

#include "gmoment/cbh.hpp"
#include "gmoment/numeric.hpp"
#include "gmoment/op_expr.hpp"

namespace gmoment {

// gamma^mu d_mu
OpExpr dirac_slash_derivative();
// gamma^mu A_mu (covariant field atoms)
OpExpr dirac_slash_potential();
// i gamma^mu d_mu - e gamma^mu A_mu
OpExpr dirac_operator();

struct HermiticityWitness {
  bool hermitian;
  std::string detail;  // offending term when not hermitian
};

// true iff gamma^0 M is hermitian, exactly; symbolic coefficients and field
// atoms are treated as real. M must be derivative-free.
HermiticityWitness hermiticity_condition(const OpExpr& M);

struct WaveEquationResult {
  OpExpr dirac_part;             // i gamma^mu d_mu - e gamma^mu A_mu - m
  std::vector<OpExpr> v_series;  // V_1 [, V_2], ds kept symbolic
  ScalarCoeff mass_term;         // 2 n pi / ds at ds = 2 pi / m, n = 1
};

// Runs the CBH + conjugation pipeline at the given order (1 or 2).
// n = 1 and ds = 2 pi / m are fixed for the mass term; V_n keep ds symbolic.
WaveEquationResult derive_wave_equation(int order);

struct PauliForms {
  OpExpr covariant;        // kappa (e/4m) { sigma F - 2 sigma (A d - A d) }
  OpExpr three_plus_one;   // -kappa (e/2m) { (sigma.B - i alpha.E) - 2 {...} }
  OpExpr delta_even;       // +kappa (e/2m) beta sigma.(B - 2 A x nabla)
  OpExpr delta_odd;        // -kappa (e/2m) i beta alpha.{E - 2(phi nabla + A d_t)}
};

// Rewrites V1 into the Pauli-term forms and verifies each equality by
// normalize: the covariant form under the Lorenz-gauge rule, the 3+1 form
// under static fields + Coulomb gauge. Throws if v1 does not carry ds
// grade exactly 1, or if a verification fails.
PauliForms v1_to_pauli_form(const OpExpr& v1);

}  // namespace gmoment
