#pragma once

// Deterministic, round-trippable text form for operator expressions.
// One term per line:
//
//   gaussian [sym[^exp]]... [* matrix] [* field]... [* dMU]...
//
// gaussian := rational | [rational]'i' | '(' rational (+|-) rational 'i' ')'
// matrix   := g0 | g0g1 | ... (ascending products; aliases beta, alphaK,
//             sigmaK, gamma5 are accepted on input)
// field    := A_MU | phi(x) | AvK | SymAB | BK | EK | vec(V,K) | cross(U,V,K)
//             or '(' dMU... field ')' for derived fields
//
// An empty expression prints as "0". Lines starting with '#' are comments.
// The grammar is documented in docs/expr-format.md.

#include <string>

#include "gmoment/op_expr.hpp"

namespace gmoment {

std::string print_expr(const OpExpr& e);
OpExpr parse_expr(const std::string& text);

// single-line rendering (terms joined by " + "), for diagnostics
std::string print_inline(const OpExpr& e);

}  // namespace gmoment
