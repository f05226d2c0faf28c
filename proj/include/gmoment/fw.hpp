#pragma once

// Foldy-Wouthuysen machinery: even/odd split of 3+1 Hamiltonians, the
// closed-form FW composite to order 1/m^2, Pauli reduction, and the
// alteration of H^FW caused by the first-order correction term.

#include "gmoment/audit.hpp"
#include "gmoment/dirac.hpp"
#include "gmoment/op_expr.hpp"

namespace gmoment {

struct EvenOddSplit {
  OpExpr even;  // commutes with beta
  OpExpr odd;   // anticommutes with beta
};

// beta-grading split; even + odd reassembles the input exactly
EvenOddSplit split_even_odd(const OpExpr& h);

struct Hamiltonian {
  OpExpr even;  // epsilon
  OpExpr odd;   // o
  // mass term beta*m is implicit and carried by fw_transform

  // epsilon = e phi, o = alpha.(p - e A)
  static Hamiltonian dirac();
};

// beta m + eps + (1/2m) beta o^2 - (1/8m^2) [o,[o,eps]]; order must be 2
OpExpr fw_transform(const Hamiltonian& h, int order = 2, const RuleSet& rules = RuleSet::base());

// Normalization pass eliminating alpha-pair products through the spin
// identity (inherent to the canonical product) and applying the electric
// curl-free canonicalization; with the bare Dirac input the result is the
// order-1/m^2 Hamiltonian with g = 2.
OpExpr pauli_reduce(const OpExpr& hfw, RuleSet rules = RuleSet::base());

struct AssumptionSet {
  bool static_fields = true;
  bool curl_free_e = true;
  bool nonrelativistic = true;
  bool commuting_phi = true;
  bool weak_field = true;  // drop terms with >= 3 field atoms (moment pipeline)
};

// prefix * {beta/m (i d_t - e phi [- beta m])}
struct BracketedPiece {
  OpExpr prefix;
  bool minus_beta_m = false;
};

OpExpr expand_bracket(const BracketedPiece& p, const RuleSet& rules);
// nonrelativistic rule (i d_t - e phi) -> beta m applied to the factor
OpExpr collapse_bracket(const BracketedPiece& p);

struct V1Residual {
  OpExpr delta_even, delta_odd;      // Eq.-408 alterations
  OpExpr second_exact, third_exact;  // first variations of beta o^2/2m and the
                                     // triple-commutator term, engine-exact
  OpExpr line_curl;                  // +kappa (e/4m^2) i sigma.(curl E)
  OpExpr line_div;                   // +kappa (e/4m^2) (div E + E.grad)
  BracketedPiece line_magnetic;      // -kappa (e/2m) beta sigma.(B - 2 A x grad) {..-beta m}
  OpExpr line_axe;                   // -kappa (e^2/2m^2) sigma.(A x E)
  BracketedPiece line_adote;         // -kappa (e^2/4m^2) i (A.E) {...}
  OpExpr result;                     // the residual delta H^FW
};

// Reproduces the alteration of H^FW due to V1 and reduces it under the
// assumption set. static_fields, nonrelativistic and commuting_phi are
// required (error naming the missing flag); with curl_free_e disabled the
// curl term survives in `result`.
V1Residual v1_residual(const AssumptionSet& assumptions, Audit* audit = nullptr);

// coefficient c with expr == c * (e/2m) beta sigma.B (atoms B_k); throws if
// the expression is not proportional to the magnetic pattern
ScalarCoeff magnetic_moment_coefficient(const OpExpr& expr);

}  // namespace gmoment
