#pragma once

// Campbell-Hausdorff expansion and the right-conjugation expansion
//   phi exp(i w) = exp(i w) { phi + i[phi,w] - (1/2)[[phi,w],w] + ... },
// both truncated by the ds grading of the coefficients.

#include "gmoment/op_expr.hpp"

namespace gmoment {

// log(exp(X) exp(Y)) through third order in nested brackets:
//   X + Y + (1/2)[X,Y] + (1/12)([[X,Y],Y] - [[X,Y],X]),
// truncated at the requested ds order. X and Y must carry ds grade >= 1;
// order must be 1, 2 or 3.
OpExpr cbh_expand(const OpExpr& X, const OpExpr& Y, int order,
                  const RuleSet& rules = RuleSet::covariant());

// phi + i[phi,w] - (1/2)[[phi,w],w] + ..., truncated at ds order
OpExpr conjugate_expand(const OpExpr& phi, const OpExpr& omega, int order,
                        const RuleSet& rules = RuleSet::covariant());

}  // namespace gmoment
