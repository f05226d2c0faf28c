#include "gmoment/dirac.hpp"

#include "gmoment/serialize.hpp"

namespace gmoment {

OpExpr dirac_slash_derivative() {
  OpExpr out;
  for (int mu = 0; mu < 4; ++mu)
    out += mul(OpExpr::gamma_upper(mu), OpExpr::deriv(mu), RuleSet::covariant());
  return out;
}

OpExpr dirac_slash_potential() {
  OpExpr out;
  for (int mu = 0; mu < 4; ++mu)
    out += mul(OpExpr::gamma_upper(mu), OpExpr::cov_A(mu), RuleSet::covariant());
  return out;
}

OpExpr dirac_operator() {
  return dirac_slash_derivative() * ScalarCoeff::i() -
         dirac_slash_potential() * ScalarCoeff::sym(sym::e);
}

// ---------------------------------------------------------------------------
namespace {

// dagger sign of a basis element: Gamma_S^dagger = dag_sign(S) * Gamma_S
int dagger_sign(std::uint8_t mask) {
  static const std::array<int, 16> table = [] {
    std::array<int, 16> t{};
    for (int s = 0; s < 16; ++s) {
      Mat4 m = CliffordBasis::matrix(static_cast<std::uint8_t>(s));
      if (dagger(m) == m)
        t[s] = 1;
      else if (dagger(m) == m * GaussianRational(-1))
        t[s] = -1;
      else
        throw Error("clifford basis element is not (anti-)hermitian");
    }
    return t;
  }();
  return table[mask];
}

ScalarCoeff conj_coeff(const ScalarCoeff& c) {
  // symbols treated as real: conjugate the Gaussian rationals only
  std::vector<std::pair<SymbolMonomial, GaussianRational>> raw;
  for (auto& [m, g] : c.parts()) raw.push_back({m, g.conj()});
  return make_canonical(std::move(raw));
}

}  // namespace

HermiticityWitness hermiticity_condition(const OpExpr& M) {
  for (auto& [w, c] : M.terms())
    if (!w.derivs.empty())
      throw Error("hermiticity_condition: M must be derivative-free");
  OpExpr H = OpExpr::beta() * M;  // gamma^0 M
  // H^dagger with fields and symbols real
  OpExpr Hd = H.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    Word w2 = w;
    ScalarCoeff c2 = conj_coeff(c) * ScalarCoeff(GaussianRational(dagger_sign(w.mask)));
    return {{std::move(w2), std::move(c2)}};
  });
  OpExpr diff = H - Hd;
  if (diff.is_zero()) return {true, ""};
  auto& [w, c] = diff.terms().front();
  return {false, "gamma^0 M has anti-hermitian part at " + w.str() + " with coefficient " + c.str()};
}

// ---------------------------------------------------------------------------
WaveEquationResult derive_wave_equation(int order) {
  if (order < 1 || order > 2) throw Error("derive_wave_equation: order must be 1 or 2");
  const RuleSet rules = RuleSet::covariant();
  const ScalarCoeff ds = ScalarCoeff::sym(sym::ds);
  const ScalarCoeff e = ScalarCoeff::sym(sym::e);
  const long n = 1;  // quantization integer fixed by the mass term

  OpExpr X = dirac_slash_derivative() * ds;
  OpExpr Y = dirac_slash_potential() * (ScalarCoeff::i() * ds * e);
  OpExpr Z = cbh_expand(X, Y, order + 1, rules);

  OpExpr phi = Z * ScalarCoeff::i() -
               OpExpr::scalar(ScalarCoeff::rational(2 * n) * ScalarCoeff::sym(sym::pi));
  OpExpr omega = Y * ScalarCoeff::i();
  OpExpr W = conjugate_expand(phi, omega, order + 1, rules);

  OpExpr wave = W * ds.inverse();  // grade shift, exact

  WaveEquationResult out;
  OpExpr grade0 = wave.grade_filter(sym::ds, 0);
  OpExpr want0 = dirac_operator();
  if (grade0 != want0)
    throw Error("derive_wave_equation: order-0 part does not assemble the Dirac operator");

  // mass term: -2 n pi / ds with ds -> 2 pi / m and n = 1 gives -m
  OpExpr mass_part = wave.grade_filter(sym::ds, -1);
  ScalarCoeff mass = ScalarCoeff::sym(sym::m);
  OpExpr want_mass = OpExpr::scalar(-ScalarCoeff::rational(2 * n) * ScalarCoeff::sym(sym::pi) *
                                    ScalarCoeff::sym(sym::ds, -1));
  if (mass_part != want_mass)
    throw Error("derive_wave_equation: unexpected ds^-1 part");
  out.mass_term = mass;
  out.dirac_part = want0 - OpExpr::scalar(mass);

  for (int g = 1; g <= order; ++g) out.v_series.push_back(wave.grade_filter(sym::ds, g));

  // no grades beyond the truncation order may appear
  if (wave.max_grade(sym::ds) > order)
    throw Error("derive_wave_equation: truncation left higher ds grades");
  return out;
}

// ---------------------------------------------------------------------------
namespace {

OpExpr sigma_munu(int mu, int nu) {
  return commutator(OpExpr::gamma_upper(mu), OpExpr::gamma_upper(nu), RuleSet::covariant()) *
         (ScalarCoeff::i() * ScalarCoeff::rational(1, 2));
}

OpExpr field_strength(int mu, int nu) {
  FieldAtom dA1;
  dA1.kind = FieldAtom::Kind::CovA;
  dA1.i1 = static_cast<std::uint8_t>(nu);
  dA1.derivs = {static_cast<std::uint8_t>(mu)};
  FieldAtom dA2;
  dA2.kind = FieldAtom::Kind::CovA;
  dA2.i1 = static_cast<std::uint8_t>(mu);
  dA2.derivs = {static_cast<std::uint8_t>(nu)};
  return OpExpr::field(dA1) - OpExpr::field(dA2);
}

}  // namespace

PauliForms v1_to_pauli_form(const OpExpr& v1) {
  if (v1.is_zero() || v1.min_grade(sym::ds) != 1 || v1.max_grade(sym::ds) != 1)
    throw Error("v1_to_pauli_form: input must carry ds grade exactly 1");

  const ScalarCoeff e = ScalarCoeff::sym(sym::e);
  const ScalarCoeff kappa = ScalarCoeff::sym(sym::kappa);
  const ScalarCoeff inv_m = ScalarCoeff::sym(sym::m, -1);
  // ds expressed through kappa = -i ds m
  std::map<SymbolId, ScalarCoeff> ds_to_kappa{
      {sym::ds, ScalarCoeff::i() * kappa * inv_m}};
  OpExpr v1k = v1.substitute(ds_to_kappa);

  // covariant Pauli form, Eq.-406 shape
  const RuleSet cov = RuleSet::covariant();
  OpExpr pauli;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      OpExpr a_part =
          mul(OpExpr::cov_A(mu), OpExpr::deriv(nu), cov) - mul(OpExpr::cov_A(nu), OpExpr::deriv(mu), cov);
      pauli += mul(sigma_munu(mu, nu), field_strength(mu, nu) - a_part * 2, cov);
    }
  pauli = pauli * (kappa * e * ScalarCoeff::rational(1, 4) * inv_m);

  RuleSet lorenz = RuleSet::covariant();
  lorenz.lorenz_gauge = true;
  if (!(apply_rules(v1k - pauli, lorenz).is_zero()))
    throw Error("v1_to_pauli_form: covariant Pauli form does not match V1 under the Lorenz rule");

  // 3+1 form, Eq.-407 shape
  RuleSet r31;
  r31.static_fields = true;
  OpVec3 A = vec_of([](int k) { return OpExpr::a_vec(k); });
  OpVec3 E = vec_of([](int k) { return OpExpr::e_vec(k); });
  OpVec3 B = vec_of([](int k) { return OpExpr::b_vec(k); });
  OpVec3 nabla = vec_of([](int k) { return OpExpr::deriv(k); });
  OpVec3 AxNabla = cross3(A, nabla, r31);
  OpVec3 phi_nabla = vec_of([&](int k) { return mul(OpExpr::phi(), OpExpr::deriv(k), r31); });
  OpVec3 A_dt = vec_of([&](int k) { return mul(OpExpr::a_vec(k), OpExpr::deriv(0), r31); });

  OpExpr three = sigma_dot(B) - alpha_dot(E) * ScalarCoeff::i() -
                 (sigma_dot(AxNabla) -
                  (alpha_dot(phi_nabla) + alpha_dot(A_dt)) * ScalarCoeff::i()) *
                     ScalarCoeff::rational(2);
  three = three * (-kappa * e * ScalarCoeff::rational(1, 2) * inv_m);

  RuleSet check31 = r31;
  check31.coulomb_gauge = true;
  OpExpr v1_31 = to_three_plus_one(v1k, check31);
  if (!(apply_rules(v1_31 - three, check31).is_zero()))
    throw Error("v1_to_pauli_form: 3+1 form does not match V1 under static + Coulomb rules");

  // Eq.-408 split of the Hamiltonian alteration dH = -beta V1
  OpExpr dH = mul(-OpExpr::beta(), three, r31);
  OpExpr even = dH.filter([](const Word& w, const ScalarCoeff&) { return w.is_even(); });
  OpExpr odd = dH.filter([](const Word& w, const ScalarCoeff&) { return !w.is_even(); });

  OpExpr want_even = mul(OpExpr::beta(), sigma_dot(vec_of([&](int k) {
                           return B[k - 1] - AxNabla[k - 1] * ScalarCoeff::rational(2);
                         })),
                         r31) *
                     (kappa * e * ScalarCoeff::rational(1, 2) * inv_m);
  OpExpr want_odd = mul(OpExpr::beta(), alpha_dot(vec_of([&](int k) {
                          return E[k - 1] - (phi_nabla[k - 1] + A_dt[k - 1]) * ScalarCoeff::rational(2);
                        })),
                        r31) *
                    (-ScalarCoeff::i() * kappa * e * ScalarCoeff::rational(1, 2) * inv_m);
  if (even != want_even || odd != want_odd)
    throw Error("v1_to_pauli_form: Eq.-408 even/odd split mismatch");

  return {pauli, three, even, odd};
}

}  // namespace gmoment
