#pragma once

// Noncommutative operator expressions: sums of ScalarCoeff * word, where a
// word is (Clifford basis element) * (commuting field atoms) * (derivative
// operators). Expressions are canonical by construction:
//
//   - products of gamma matrices reduce through the 16-element basis
//     Gamma_S (S subset of {0,1,2,3}, ascending index order) with a sign,
//   - derivative operators move right through field atoms via the product
//     rule, emitting derived-field atoms,
//   - derived-field atoms are themselves canonicalized by the rewrite rules
//     of the active RuleSet (see below), with a step budget guarding
//     against non-terminating rule sets.
//
// Two atom vocabularies share this engine: the covariant layer (A_mu and
// derivatives) and the 3+1 layer (phi, A-vec, E, B and the symmetric
// gradient atoms Sym_ab). The structural Vec/Cross atoms used by the
// moment pipeline ride along as opaque commuting fields.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gmoment/gamma.hpp"
#include "gmoment/scalar.hpp"

namespace gmoment {

// ---------------------------------------------------------------------------
// 16-element Clifford basis. Mask bit t set selects gamma^t, factors in
// ascending index order: Gamma_{0b0110} = gamma^1 gamma^2.
struct CliffordBasis {
  // Gamma_a * Gamma_b = sign * Gamma_{a xor b}
  static std::pair<int, std::uint8_t> mul(std::uint8_t a, std::uint8_t b);
  // true iff Gamma_S commutes with beta = gamma^0
  static bool commutes_with_beta(std::uint8_t mask);
  // concrete matrix in the Dirac representation
  static Mat4 matrix(std::uint8_t mask);
  static std::string name(std::uint8_t mask);  // "1", "g0", "g0g1", ...
};

// ---------------------------------------------------------------------------
enum class VecId : std::uint8_t { A = 0, E = 1, B = 2, R = 3 };
const char* vec_name(VecId v);

struct FieldAtom {
  enum class Kind : std::uint8_t {
    CovA,   // covariant A_mu, i1 = mu in 0..3
    Phi,    // scalar potential (3+1)
    AVec,   // 3-vector potential component, i1 = 1..3
    SymA,   // symmetric gradient (1/2)(d_a Avec_b + d_b Avec_a), i1<=i2
    BVec,   // magnetic field component
    EVec,   // electric field component
    Vec,    // structural: component i1 of abstract vector u
    Cross   // structural: component i1 of (u x v)
  };
  Kind kind{};
  std::uint8_t i1 = 0, i2 = 0;
  VecId u{}, v{};
  std::vector<std::uint8_t> derivs;  // sorted; 0 = time

  auto operator<=>(const FieldAtom&) const = default;
  std::string str() const;
};

struct Word {
  std::uint8_t mask = 0;
  std::vector<FieldAtom> fields;       // sorted
  std::vector<std::uint8_t> derivs;    // sorted; operators acting rightward

  auto operator<=>(const Word&) const = default;
  bool is_even() const { return CliffordBasis::commutes_with_beta(mask); }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Named toggleable rewrite rules. e_def and the Sym/B split (with their
// ordering identities) are canonicalization, on by default in the 3+1 layer;
// the rest are physical assumptions, off by default.
struct RuleSet {
  bool static_fields = false;  // (d_0 f) -> 0
  bool e_def = true;           // spatial (d_k phi) -> -E_k
  bool ab_split = true;        // spatial (d_a Avec_b) -> Sym_ab + (1/2) eps_abk B_k
  bool curl_free_e = false;    // (d_j E_k) symmetric in all spatial indices
  bool vacuum_field = false;   // (d_0 d_0 A_nu) -> sum_k (d_k d_k A_nu)
  bool lorenz_gauge = false;   // (d_0 A_0) -> sum_k (d_k A_k)      [covariant]
  bool coulomb_gauge = false;  // Sym_33 -> -Sym_11 - Sym_22        [3+1]

  static RuleSet base() { return {}; }
  static RuleSet covariant() {
    RuleSet r;
    r.e_def = r.ab_split = false;
    return r;
  }
};

// d_mu applied to one atom, canonicalized under the rules
std::vector<std::pair<FieldAtom, GaussianRational>> derive_atom(const FieldAtom& f, int mu,
                                                                const RuleSet& rules);
// atom canonicalization used by parsing and rule re-application
std::vector<std::pair<FieldAtom, GaussianRational>> canon_atom(FieldAtom f, const RuleSet& rules);

// ---------------------------------------------------------------------------
class OpExpr {
 public:
  using Term = std::pair<Word, ScalarCoeff>;

  OpExpr() = default;

  static OpExpr zero() { return {}; }
  static OpExpr scalar(ScalarCoeff c);
  static OpExpr matrix(std::uint8_t mask, ScalarCoeff c = ScalarCoeff::one());
  static OpExpr gamma_upper(int mu);
  static OpExpr gamma_lower(int mu);
  static OpExpr beta() { return matrix(0b0001); }
  static OpExpr alpha(int k);   // gamma^0 gamma^k, k = 1..3
  static OpExpr sigma(int k);   // Dirac spin matrix, k = 1..3
  static OpExpr gamma5();       // i g0 g1 g2 g3
  static OpExpr deriv(int mu, ScalarCoeff c = ScalarCoeff::one());
  static OpExpr deriv_upper(int mu);
  static OpExpr field(FieldAtom f, ScalarCoeff c = ScalarCoeff::one());
  static OpExpr cov_A(int mu);
  static OpExpr phi();
  static OpExpr a_vec(int k);
  static OpExpr e_vec(int k);
  static OpExpr b_vec(int k);
  static OpExpr vec_comp(VecId u, int k);
  static OpExpr cross_comp(VecId u, VecId v, int k);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  OpExpr operator-() const;
  OpExpr operator+(const OpExpr& o) const;
  OpExpr operator-(const OpExpr& o) const;
  OpExpr operator*(const OpExpr& o) const;  // base rules
  OpExpr operator*(const ScalarCoeff& c) const;
  OpExpr& operator+=(const OpExpr& o) { return *this = *this + o; }
  OpExpr& operator-=(const OpExpr& o) { return *this = *this - o; }
  bool operator==(const OpExpr& o) const { return terms_ == o.terms_; }
  bool operator!=(const OpExpr& o) const { return !(*this == o); }

  // term-level rewriting hook used by the pipelines
  OpExpr map_terms(
      const std::function<std::vector<Term>(const Word&, const ScalarCoeff&)>& fn) const;
  OpExpr filter(const std::function<bool(const Word&, const ScalarCoeff&)>& pred) const;

  // sub-sum with the given power of a symbol in every part of the coefficient
  OpExpr grade_filter(SymbolId s, std::int32_t power) const;
  std::int32_t min_grade(SymbolId s) const;
  std::int32_t max_grade(SymbolId s) const;

  OpExpr substitute(const std::map<SymbolId, ScalarCoeff>& bindings) const;
  OpExpr scale_coeffs(const std::function<ScalarCoeff(const ScalarCoeff&)>& fn) const;

  std::string str() const;

  static OpExpr from_terms(std::vector<Term> raw);

 private:
  std::vector<Term> terms_;  // sorted by Word, coefficients nonzero
};

// products and brackets under an explicit rule set
OpExpr mul(const OpExpr& a, const OpExpr& b, const RuleSet& rules);
OpExpr commutator(const OpExpr& a, const OpExpr& b, const RuleSet& rules = RuleSet::base());
OpExpr anticommutator(const OpExpr& a, const OpExpr& b, const RuleSet& rules = RuleSet::base());

// idempotent re-canonicalization: rebuilds every field atom under `rules`
OpExpr apply_rules(const OpExpr& e, const RuleSet& rules);

// normalization entry point; expressions are canonical by construction, so
// this re-merges terms and re-canonicalizes atoms (idempotent)
OpExpr normalize(const OpExpr& e, const RuleSet& rules = RuleSet::base());

// covariant -> 3+1 conversion: A_0 -> phi, A_k -> -Avec_k, derivatives
// re-applied under `rules`
OpExpr to_three_plus_one(const OpExpr& e, const RuleSet& rules);

// 3-vector helpers (concrete index expansion)
using OpVec3 = std::array<OpExpr, 3>;
OpExpr dot3(const OpVec3& a, const OpVec3& b, const RuleSet& rules = RuleSet::base());
OpVec3 cross3(const OpVec3& a, const OpVec3& b, const RuleSet& rules = RuleSet::base());
OpExpr sigma_dot(const OpVec3& a);
OpExpr alpha_dot(const OpVec3& a);
OpVec3 vec_of(const std::function<OpExpr(int)>& f);

// maps a derivative-free expression to its concrete Dirac-basis matrix,
// with fields/symbols left in the ScalarCoeff entries -- only usable when
// the expression is purely a matrix polynomial (no fields, no derivs)
Mat4 to_matrix(const OpExpr& e);

}  // namespace gmoment
