#include "gmoment/cbh.hpp"

namespace gmoment {

namespace {

OpExpr truncate_grades(const OpExpr& e, int max_order) {
  OpExpr out;
  for (int g = e.min_grade(sym::ds); g <= std::min(e.max_grade(sym::ds), max_order); ++g)
    out += e.grade_filter(sym::ds, g);
  return out;
}

void require_grade_ge_one(const OpExpr& e, const char* who) {
  if (!e.is_zero() && e.min_grade(sym::ds) < 1)
    throw Error(std::string(who) + ": argument must carry ds grade >= 1");
}

}  // namespace

OpExpr cbh_expand(const OpExpr& X, const OpExpr& Y, int order, const RuleSet& rules) {
  if (order < 1 || order > 3) throw Error("cbh_expand: order must be 1, 2 or 3");
  require_grade_ge_one(X, "cbh_expand");
  require_grade_ge_one(Y, "cbh_expand");
  OpExpr Z = X + Y;
  if (order >= 2) Z += commutator(X, Y, rules) * ScalarCoeff::rational(1, 2);
  if (order >= 3) {
    OpExpr XY = commutator(X, Y, rules);
    Z += (commutator(XY, Y, rules) - commutator(XY, X, rules)) * ScalarCoeff::rational(1, 12);
  }
  return truncate_grades(Z, order);
}

OpExpr conjugate_expand(const OpExpr& phi, const OpExpr& omega, int order, const RuleSet& rules) {
  if (order < 1 || order > 3) throw Error("conjugate_expand: order must be 1, 2 or 3");
  require_grade_ge_one(omega, "conjugate_expand");
  OpExpr out;
  OpExpr nested = phi;  // ad_omega^k applied to phi
  ScalarCoeff prefactor = ScalarCoeff::one();
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      nested = commutator(nested, omega, rules);
      prefactor = prefactor * ScalarCoeff::i() * ScalarCoeff::rational(1, k);
    }
    out += nested * prefactor;
    if (nested.is_zero()) break;
  }
  return truncate_grades(out, order);
}

}  // namespace gmoment
