#include "gmoment/moment.hpp"

#include <optional>

#include "gmoment/serialize.hpp"

namespace gmoment {

namespace {

// lazy accessors: sym:: constants live in another translation unit, so these
// must not be file-scope statics
ScalarCoeff sc_e() { return ScalarCoeff::sym(sym::e); }
ScalarCoeff sc_kappa() { return ScalarCoeff::sym(sym::kappa); }
ScalarCoeff sc_dm() { return ScalarCoeff::sym(sym::dm); }
ScalarCoeff sc_inv_m() { return ScalarCoeff::sym(sym::m, -1); }

int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}

}  // namespace

ParticleConfig ParticleConfig::electron() { return {"electron", sym::m, Rational(1)}; }
ParticleConfig ParticleConfig::muon() { return {"muon", sym::m_mu, Rational(1034, 5)}; }

// ---------------------------------------------------------------------------
ScalarCoeff SelfEnergyModel::delta_m_closed_form() const {
  return ScalarCoeff::i() * ScalarCoeff::rational(1, 8) * ScalarCoeff::sym(sym::e, 2) *
         ScalarCoeff::sym(sym::pi, -2) * ScalarCoeff::sym(sym::eps0, -1) *
         ScalarCoeff::sym(sym::r0, -1);
}

ScalarCoeff SelfEnergyModel::bind(const ScalarCoeff& c, const ParticleConfig& p) const {
  ScalarCoeff cur = c;
  if (p.mass_symbol != sym::m)
    cur = cur.substitute({{sym::m, ScalarCoeff::sym(p.mass_symbol)}});
  std::map<SymbolId, ScalarCoeff> chain;
  chain[sym::dm] = enabled ? delta_m_closed_form() : ScalarCoeff::zero();
  chain[sym::r0] = ScalarCoeff::sym(sym::pi) * ScalarCoeff::sym(p.mass_symbol, -1);
  cur = cur.substitute(chain);
  cur = cur.substitute_square(sym::e, ScalarCoeff::rational(4) * ScalarCoeff::sym(sym::pi) *
                                          ScalarCoeff::sym(sym::eps0) * ScalarCoeff::sym(sym::alpha));
  cur = cur.substitute({{sym::kappa, ScalarCoeff(GaussianRational(Rational(0), Rational(-2))) *
                                         ScalarCoeff::sym(sym::pi)}});
  return cur;
}

// ---------------------------------------------------------------------------
// structural vector layer
namespace {

struct VecTerm {
  ScalarCoeff c;
  bool is_cross = false;
  VecId u{}, v{};
};
using VecExpr = std::vector<VecTerm>;

// registry of interned dot-product symbols
std::map<SymbolId, std::pair<VecId, VecId>>& dot_registry() {
  static std::map<SymbolId, std::pair<VecId, VecId>> reg;
  return reg;
}

ScalarCoeff dot_symbol(VecId a, VecId b) {
  if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
  if (a == VecId::R && b == VecId::R) return ScalarCoeff::sym(sym::r, 2);
  SymbolId id = Symbols::intern(std::string("dot_") + vec_name(a) + "_" + vec_name(b));
  dot_registry()[id] = {a, b};
  return ScalarCoeff::sym(id);
}

// the section-4.3 configuration
VecExpr vec_binding(VecId id) {
  switch (id) {
    case VecId::A:  // (1/2) B x r
      return {{ScalarCoeff::rational(1, 2), true, VecId::B, VecId::R}};
    case VecId::E:  // -(phi/r^2) r
      return {{-ScalarCoeff::sym(sym::phi) * ScalarCoeff::sym(sym::r, -2), false, VecId::R}};
    default:
      return {{ScalarCoeff::one(), false, id}};
  }
}

VecExpr cross_eval(const VecExpr& a, const VecExpr& b) {
  VecExpr out;
  for (auto& x : a)
    for (auto& y : b) {
      ScalarCoeff c = x.c * y.c;
      if (!x.is_cross && !y.is_cross) {
        if (x.u == y.u) continue;  // u x u = 0
        VecId u = x.u, v = y.u;
        if (static_cast<int>(u) > static_cast<int>(v)) {
          std::swap(u, v);
          c = -c;
        }
        out.push_back({c, true, u, v});
      } else if (x.is_cross && !y.is_cross) {
        // (u x v) x w = v (u.w) - u (v.w)
        out.push_back({c * dot_symbol(x.u, y.u), false, x.v});
        out.push_back({-c * dot_symbol(x.v, y.u), false, x.u});
      } else if (!x.is_cross && y.is_cross) {
        // w x (u x v) = u (w.v) - v (w.u)
        out.push_back({c * dot_symbol(x.u, y.v), false, y.u});
        out.push_back({-c * dot_symbol(x.u, y.u), false, y.v});
      } else {
        throw Error("spherical_reduction: nested cross products are not supported");
      }
    }
  return out;
}

ScalarCoeff triple_product(VecId a, VecId b, VecId c) {
  if (a == b || b == c || a == c) return ScalarCoeff::zero();
  // only the vanishing instances occur in the pipeline; a nonzero triple has
  // no reduction here
  throw Error("spherical_reduction: nonvanishing scalar triple product encountered");
}

ScalarCoeff dot_eval(const VecExpr& a, const VecExpr& b) {
  ScalarCoeff out;
  for (auto& x : a)
    for (auto& y : b) {
      ScalarCoeff c = x.c * y.c;
      if (!x.is_cross && !y.is_cross) {
        out += c * dot_symbol(x.u, y.u);
      } else if (x.is_cross && !y.is_cross) {
        out += c * triple_product(x.u, x.v, y.u);
      } else if (!x.is_cross && y.is_cross) {
        out += c * triple_product(x.u, y.u, y.v);
      } else {
        // (a x b).(c x d) = (a.c)(b.d) - (a.d)(b.c)
        out += c * (dot_symbol(x.u, y.u) * dot_symbol(x.v, y.v) -
                    dot_symbol(x.u, y.v) * dot_symbol(x.v, y.u));
      }
    }
  return out;
}

std::vector<std::pair<FieldAtom, ScalarCoeff>> vec_term_atoms(const VecExpr& ve, int comp) {
  std::vector<std::pair<FieldAtom, ScalarCoeff>> out;
  for (auto& t : ve) {
    FieldAtom f;
    f.i1 = static_cast<std::uint8_t>(comp);
    if (t.is_cross) {
      f.kind = FieldAtom::Kind::Cross;
      f.u = t.u;
      f.v = t.v;
    } else {
      f.kind = FieldAtom::Kind::Vec;
      f.u = t.u;
    }
    out.push_back({std::move(f), t.c});
  }
  return out;
}

}  // namespace

OpExpr spherical_reduction(const OpExpr& expr, bool averaging, Audit* audit) {
  // substitute the vector bindings inside structural atoms
  OpExpr bound = expr.map_terms([&](const Word& w, const ScalarCoeff& c) {
    std::vector<std::pair<std::vector<FieldAtom>, ScalarCoeff>> parts{{{}, c}};
    for (auto& f : w.fields) {
      std::vector<std::pair<FieldAtom, ScalarCoeff>> sum;
      if (f.kind == FieldAtom::Kind::Vec && f.derivs.empty()) {
        sum = vec_term_atoms(vec_binding(f.u), f.i1);
      } else if (f.kind == FieldAtom::Kind::Cross && f.derivs.empty()) {
        sum = vec_term_atoms(cross_eval(vec_binding(f.u), vec_binding(f.v)), f.i1);
      } else {
        sum = {{f, ScalarCoeff::one()}};
      }
      std::vector<std::pair<std::vector<FieldAtom>, ScalarCoeff>> next;
      for (auto& [fs, cc] : parts)
        for (auto& [atom, s] : sum) {
          auto fs2 = fs;
          fs2.push_back(atom);
          next.push_back({std::move(fs2), cc * s});
        }
      parts = std::move(next);
    }
    std::vector<OpExpr::Term> out;
    for (auto& [fs, cc] : parts) {
      Word w2;
      w2.mask = w.mask;
      w2.fields = fs;
      std::sort(w2.fields.begin(), w2.fields.end());
      w2.derivs = w.derivs;
      out.push_back({std::move(w2), cc});
    }
    return out;
  });

  // dot-product symbols of bound vectors evaluate through the same bindings
  std::map<SymbolId, ScalarCoeff> dot_bindings;
  for (auto& [id, uv] : dot_registry()) {
    if (uv.first == VecId::A || uv.first == VecId::E || uv.second == VecId::A ||
        uv.second == VecId::E)
      dot_bindings[id] = dot_eval(vec_binding(uv.first), vec_binding(uv.second));
  }
  bound = bound.substitute(dot_bindings);

  if (!averaging) return bound;

  ScalarCoeff bdotr = dot_symbol(VecId::B, VecId::R);
  GaussianRational g;
  SymbolMonomial mono;
  bdotr.single_part(g, mono);
  SymbolId bdotr_id = mono.exps[0].first;
  OpExpr kept = bound.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    return {{w, c.coeff_of_power(bdotr_id, 0)}};
  });
  if (audit) audit->drop("Eq.415", "spherical averaging dropped (B.r)-carrying terms", bound - kept);
  return kept;
}

// ---------------------------------------------------------------------------
namespace {

FieldAtom concrete_vec_atom(VecId u, int comp) {
  FieldAtom f;
  f.i1 = static_cast<std::uint8_t>(comp);
  switch (u) {
    case VecId::A: f.kind = FieldAtom::Kind::AVec; break;
    case VecId::E: f.kind = FieldAtom::Kind::EVec; break;
    case VecId::B: f.kind = FieldAtom::Kind::BVec; break;
    default: throw Error("no concrete field atom for the position vector");
  }
  return f;
}

}  // namespace

OpExpr expand_structural(const OpExpr& expr) {
  // expand Cross/Vec atoms into concrete fields
  OpExpr out = expr.map_terms([&](const Word& w, const ScalarCoeff& c) {
    std::vector<OpExpr::Term> acc{{Word{w.mask, {}, w.derivs}, c}};
    for (auto& f : w.fields) {
      std::vector<OpExpr::Term> next;
      for (auto& [wrk, cc] : acc) {
        if (f.kind == FieldAtom::Kind::Cross && f.derivs.empty()) {
          for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
              int s = eps3(f.i1, i, j);
              if (s == 0) continue;
              Word w2 = wrk;
              w2.fields.push_back(concrete_vec_atom(f.u, i));
              w2.fields.push_back(concrete_vec_atom(f.v, j));
              next.push_back({std::move(w2), cc * ScalarCoeff::rational(s)});
            }
        } else if (f.kind == FieldAtom::Kind::Vec && f.derivs.empty()) {
          Word w2 = wrk;
          w2.fields.push_back(concrete_vec_atom(f.u, f.i1));
          next.push_back({std::move(w2), cc});
        } else {
          Word w2 = wrk;
          w2.fields.push_back(f);
          next.push_back({std::move(w2), cc});
        }
      }
      acc = std::move(next);
    }
    for (auto& [w2, cc] : acc) std::sort(w2.fields.begin(), w2.fields.end());
    return acc;
  });

  // dot symbols expand into concrete contractions
  for (;;) {
    std::optional<std::pair<SymbolId, std::pair<VecId, VecId>>> found;
    for (auto& [w, c] : out.terms()) {
      for (auto& [id, uv] : dot_registry())
        if (c.depends_on(id)) found = {id, uv};
      if (found) break;
    }
    if (!found) break;
    auto [id, uv] = *found;
    out = out.map_terms([&](const Word& w, const ScalarCoeff& c) {
      std::vector<OpExpr::Term> acc;
      for (std::int32_t p = c.min_power(id); p <= c.max_power(id); ++p) {
        ScalarCoeff part = c.coeff_of_power(id, p);
        if (part.is_zero()) continue;
        if (p < 0) throw Error("expand_structural: negative dot-symbol power");
        ScalarCoeff stripped = part.substitute({{id, ScalarCoeff::one()}});
        std::vector<Word> words{w};
        for (int rep = 0; rep < p; ++rep) {
          std::vector<Word> next;
          for (auto& wrk : words)
            for (int k = 1; k <= 3; ++k) {
              Word w2 = wrk;
              w2.fields.push_back(concrete_vec_atom(uv.first, k));
              w2.fields.push_back(concrete_vec_atom(uv.second, k));
              next.push_back(std::move(w2));
            }
          words = std::move(next);
        }
        for (auto& w2 : words) {
          std::sort(w2.fields.begin(), w2.fields.end());
          acc.push_back({w2, stripped});
        }
      }
      return acc;
    });
  }
  return out;
}

OpExpr materialize_vec_fields(const OpExpr& expr) {
  return expr.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    Word w2 = w;
    for (auto& f : w2.fields)
      if (f.kind == FieldAtom::Kind::Vec) {
        FieldAtom conc = concrete_vec_atom(f.u, f.i1);
        conc.derivs = f.derivs;
        f = conc;
      } else if (f.kind == FieldAtom::Kind::Cross) {
        throw Error("materialize_vec_fields: unexpanded cross atom");
      }
    std::sort(w2.fields.begin(), w2.fields.end());
    return {{std::move(w2), c}};
  });
}

OpExpr bind_self_energy_fields(const OpExpr& expr) {
  return expr.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    Word w2 = w;
    int count = 0;
    std::vector<FieldAtom> rest;
    for (auto& f : w2.fields) {
      if (f.kind == FieldAtom::Kind::Phi && f.derivs.empty())
        ++count;
      else
        rest.push_back(f);
    }
    w2.fields = std::move(rest);
    std::vector<OpExpr::Term> out;
    std::int32_t pmin = c.min_power(sym::phi), pmax = c.max_power(sym::phi);
    for (std::int32_t p = pmin; p <= pmax; ++p) {
      ScalarCoeff part = c.coeff_of_power(sym::phi, p);
      if (part.is_zero()) continue;
      if (p < 0) throw Error("bind_self_energy_fields: negative phi power");
      int total = count + p;
      ScalarCoeff repl = part.substitute(
          {{sym::phi, sc_dm() * ScalarCoeff::sym(sym::e, -1)}});
      for (int rep = 0; rep < count; ++rep) repl = repl * sc_dm() * ScalarCoeff::sym(sym::e, -1);
      Word w3 = w2;
      if (total % 2 == 1) {
        auto [sign, mask] = CliffordBasis::mul(w3.mask, 0b0001);  // gamma^0 from the right
        w3.mask = mask;
        repl = repl * ScalarCoeff::rational(sign);
      }
      out.push_back({std::move(w3), std::move(repl)});
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
V2Groups expand_v2_terms() {
  RuleSet rules = RuleSet::covariant();
  rules.vacuum_field = true;  // source-free potentials, as in the no-external-charge setting

  auto gam = [](int mu) { return OpExpr::gamma_upper(mu); };
  auto dmu = [](int mu) { return OpExpr::deriv(mu); };
  auto dmu_up = [](int mu) { return OpExpr::deriv_upper(mu); };
  auto A = [](int mu) { return OpExpr::cov_A(mu); };
  auto dA = [](int d, int mu) {  // (d_d A_mu)
    FieldAtom f;
    f.kind = FieldAtom::Kind::CovA;
    f.i1 = static_cast<std::uint8_t>(mu);
    f.derivs = {static_cast<std::uint8_t>(d)};
    return OpExpr::field(f);
  };
  auto A_up = [&](int mu) { return A(mu) * ScalarCoeff::rational(mu == 0 ? 1 : -1); };

  OpExpr D, Acal, G;
  for (int mu = 0; mu < 4; ++mu) {
    D += mul(gam(mu), dmu(mu), rules);
    Acal += mul(gam(mu), A(mu), rules);
    G += mul(gam(mu), dmu(mu) * ScalarCoeff::i() + A(mu) * sc_e(), rules);
  }
  OpExpr dirac_op = D * ScalarCoeff::i() - Acal * sc_e();

  V2Groups out;
  out.double_commutator = commutator(commutator(D, Acal, rules), G, rules);

  OpExpr a, b, c, d, e5, f6, g7;
  for (int x = 0; x < 4; ++x)
    for (int nu = 0; nu < 4; ++nu)
      a += mul(mul(mul(gam(x), gam(nu), rules), dA(x, nu), rules), dirac_op, rules) *
           ScalarCoeff::rational(2);
  for (int nu = 0; nu < 4; ++nu)
    for (int mu = 0; mu < 4; ++mu)
      b += mul(mul(A(nu), mul(gam(mu), dmu(mu) * ScalarCoeff::i() - A(mu) * sc_e(), rules), rules),
               dmu_up(nu), rules) *
           ScalarCoeff::rational(4);
  c = mul(mul(Acal, D, rules), D, rules) * (ScalarCoeff::rational(-4) * ScalarCoeff::i());
  d = mul(mul(Acal, Acal, rules), D, rules) * (ScalarCoeff::rational(4) * sc_e());
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      e5 += mul(mul(gam(mu), dA(nu, mu), rules), dmu_up(nu), rules) *
            (ScalarCoeff::rational(-2) * ScalarCoeff::i());
      f6 += mul(mul(gam(nu), dA(mu, nu), rules), A_up(mu), rules) * (ScalarCoeff::rational(-4) * sc_e());
      g7 += mul(mul(gam(mu), dA(mu, nu), rules), A_up(nu), rules) * (ScalarCoeff::rational(6) * sc_e());
    }

  out.groups = {a, b, c, d, e5, f6, g7};
  OpExpr total = a + b + c + d + e5 + f6 + g7;
  OpExpr leftover = out.double_commutator - total;
  if (!leftover.is_zero())
    throw Error("expand_v2_terms: partition does not cover the expansion; leftover:\n" +
                print_expr(leftover));
  return out;
}

// ---------------------------------------------------------------------------
namespace {

ScalarCoeff baseline_coefficient() {
  OpExpr hfw = pauli_reduce(fw_transform(Hamiltonian::dirac(), 2, RuleSet::base()));
  OpExpr magnetic = hfw.filter([](const Word& w, const ScalarCoeff&) {
    return w.fields.size() == 1 && w.fields[0].kind == FieldAtom::Kind::BVec &&
           w.fields[0].derivs.empty() && w.derivs.empty();
  });
  return magnetic_moment_coefficient(magnetic);
}

OpExpr sigma_cross_structural(VecId u, VecId v) {
  OpExpr out;
  for (int k = 1; k <= 3; ++k) out += OpExpr::sigma(k) * OpExpr::cross_comp(u, v, k);
  return out;
}

}  // namespace

Contribution first_order_correction(const ParticleConfig& p, const SelfEnergyModel& se,
                                    Audit* audit) {
  Audit local;
  Audit& log = audit ? *audit : local;

  AssumptionSet assumptions;  // the required section-4.2 set
  V1Residual res = v1_residual(assumptions, &log);

  // structural form of the residual: -kappa e^2/(2 m^2) sigma.(A x E)
  //                                  -kappa e^2/(4 m^2) i (A.E)
  OpExpr structural =
      sigma_cross_structural(VecId::A, VecId::E) *
          (-sc_kappa() * sc_e() * sc_e() * ScalarCoeff::rational(1, 2) * sc_inv_m() * sc_inv_m()) +
      OpExpr::scalar(dot_symbol(VecId::A, VecId::E) *
                     (-sc_kappa() * sc_e() * sc_e() * ScalarCoeff::i() * ScalarCoeff::rational(1, 4) * sc_inv_m() *
                      sc_inv_m()));
  if (expand_structural(structural) != res.result)
    throw Error("first_order_correction: structural form does not match the V1 residual");

  OpExpr reduced = spherical_reduction(structural, /*averaging=*/true, &log);
  log.note("Eq.415", "A.E term vanishes in the spherical configuration; "
                     "sigma.(A x E) reduced to (phi/2) sigma.B");
  OpExpr magnetic = bind_self_energy_fields(materialize_vec_fields(reduced));
  ScalarCoeff delta_h = magnetic_moment_coefficient(magnetic);

  ScalarCoeff want = -ScalarCoeff::rational(1, 2) * sc_kappa() * sc_dm() * sc_inv_m();
  if (delta_h != want)
    throw Error("first_order_correction: expected -1/2 kappa dm/m, got " + delta_h.str());

  Contribution out;
  out.label = "Eq.419 first order (self-energy x V1)";
  out.delta_h = delta_h;
  out.anomaly = -se.bind(delta_h, p);
  return out;
}

// ---------------------------------------------------------------------------
std::vector<Contribution> second_order_correction(const ParticleConfig& p,
                                                  const SelfEnergyModel& se, Audit* audit) {
  Audit local;
  Audit& log = audit ? *audit : local;

  RuleSet r;  // static 3+1 rules for the section-4.5 work
  r.static_fields = true;

  V2Groups v2 = expand_v2_terms();
  log.note("Eq.422", "double commutator partitioned into the seven printed groups (exact under "
                     "the source-free field rule)");

  auto gam = [](int mu) { return OpExpr::gamma_upper(mu); };
  const ScalarCoeff m = ScalarCoeff::sym(sym::m);
  const ScalarCoeff m_plus_dm = m + sc_dm();
  // delta^2 H = -beta V2 prefactor: -beta kappa^2 (e/12m^2) i * (group)
  auto pref = [&](const OpExpr& x) {
    return mul(OpExpr::beta(), x, r) *
           (-sc_kappa() * sc_kappa() * sc_e() * ScalarCoeff::rational(1, 12) * sc_inv_m() * sc_inv_m() *
            ScalarCoeff::i());
  };

  OpVec3 E = vec_of([](int k) { return OpExpr::e_vec(k); });
  OpVec3 B = vec_of([](int k) { return OpExpr::b_vec(k); });
  OpExpr sigmaB = sigma_dot(B);
  OpExpr alphaE = alpha_dot(E);

  // ---- group (a), Eq. 423/424 ----
  OpExpr a31 = to_three_plus_one(v2.groups[0], r);
  OpExpr dirac31 = to_three_plus_one(dirac_operator(), r);
  OpExpr divA;
  for (int k = 1; k <= 3; ++k) {
    FieldAtom f;
    f.kind = FieldAtom::Kind::SymA;
    f.i1 = f.i2 = static_cast<std::uint8_t>(k);
    divA += OpExpr::field(f);
  }
  OpExpr a_decomposed = mul(divA + alphaE + sigmaB * ScalarCoeff::i(), dirac31, r) *
                        ScalarCoeff::rational(2);
  if (a31 != a_decomposed)
    throw Error("second_order_correction: group (a) structure check failed");

  OpExpr time_dirac = mul(OpExpr::beta(), OpExpr::deriv(0, ScalarCoeff::i()), r) -
                      mul(OpExpr::beta(), OpExpr::phi() * sc_e(), r);
  OpExpr keep_B = mul(sigmaB * ScalarCoeff::i(), dirac31, r) * ScalarCoeff::rational(2);
  OpExpr keep_E = mul(alphaE, time_dirac, r) * ScalarCoeff::rational(2);
  log.drop("Eq.423", "group (a): divergence and spatial-E pieces not contributing to the moment",
           a31 - keep_B - keep_E);

  // Dirac-operator factor on shell -> m
  OpExpr a1 = sigmaB * (ScalarCoeff::rational(2) * ScalarCoeff::i() * m);
  log.note("Eq.423", "(i gamma d - e gamma A) -> m on the sigma.B piece (factor substitution)");
  OpExpr d2eps_a1 = pref(a1);
  OpExpr eq424 = mul(OpExpr::beta(), sigmaB, r) *
                 (ScalarCoeff::rational(1, 3) * sc_kappa() * sc_kappa() * sc_e() * ScalarCoeff::rational(1, 2) *
                  sc_inv_m());
  if (d2eps_a1 != eq424) throw Error("second_order_correction: Eq.-424 check failed");
  ScalarCoeff c_a1 = magnetic_moment_coefficient(d2eps_a1);

  // a2 dropped: no spin structure survives its FW push
  OpExpr a2 = mul(alphaE, mul(OpExpr::beta(), OpExpr::deriv(0, ScalarCoeff::i()), r), r) *
              ScalarCoeff::rational(2);
  log.drop("Eq.423", "group (a): beta alpha.E d_t piece (no sigma in the FW output)", a2);

  // a3: e gamma^0 A_0 -> dm in place
  OpExpr a3 = bind_self_energy_fields(
      mul(alphaE, mul(OpExpr::beta(), OpExpr::phi() * (-sc_e()), r), r) * ScalarCoeff::rational(2));
  if (a3 != alphaE * (ScalarCoeff::rational(-2) * sc_dm()))
    throw Error("second_order_correction: group (a) third term check failed");

  // ---- groups (b), (c), (d): Eqs. 425-428 ----
  // selected subsums, engine-exact
  OpExpr b_sel, c_sel, d_sel;
  {
    RuleSet cov = RuleSet::covariant();
    OpExpr Dcal, Acal;
    for (int mu = 0; mu < 4; ++mu) {
      Dcal += mul(gam(mu), OpExpr::deriv(mu), cov);
      Acal += mul(gam(mu), OpExpr::cov_A(mu), cov);
    }
    OpExpr d0sq = mul(OpExpr::deriv(0), OpExpr::deriv(0), cov);
    for (int mu = 0; mu < 4; ++mu)
      b_sel += mul(mul(OpExpr::cov_A(0),
                       mul(gam(mu), OpExpr::deriv(mu, ScalarCoeff::i()) - OpExpr::cov_A(mu) * sc_e(),
                           cov),
                       cov),
                   OpExpr::deriv(0), cov) *
               ScalarCoeff::rational(4);
    c_sel = mul(Acal, d0sq, cov) * (ScalarCoeff::rational(-4) * ScalarCoeff::i());
    d_sel = mul(mul(OpExpr::cov_A(0), mul(OpExpr::cov_A(0), Dcal, cov), cov), OpExpr::scalar(sc_e() * sc_e()),
                cov) *
            ScalarCoeff::rational(4) * ScalarCoeff::sym(sym::e, -1);
    log.drop("Eq.425", "group (b): pieces outside the selected nu = 0 subsum",
             to_three_plus_one(v2.groups[1] - b_sel, r));
    log.drop("Eq.426", "group (c): pieces outside the selected xi = mu = 0 subsum",
             to_three_plus_one(v2.groups[2] - c_sel, r));
    log.drop("Eq.427", "group (d): pieces outside the selected nu = xi = 0 subsum",
             to_three_plus_one(v2.groups[3] - d_sel, r));
  }
  log.note("Eq.425", "factor substitutions e gamma^0 A_0 -> dm and i gamma^0 d_0 -> m + dm are "
                      "applied in printed position (in-place), as the derivation treats dm as a "
                      "commuting scalar");

  // factored line-2 forms (substitutions already performed, printed order)
  OpExpr p_plus_eA, p_minus_eA, eA;
  for (int k = 1; k <= 3; ++k) {
    p_plus_eA += mul(gam(k), OpExpr::deriv(k, ScalarCoeff::i()) + OpExpr::a_vec(k) * sc_e(), r);
    p_minus_eA += mul(gam(k), OpExpr::deriv(k, ScalarCoeff::i()) - OpExpr::a_vec(k) * sc_e(), r);
    eA += mul(gam(k), OpExpr::a_vec(k) * sc_e(), r);
  }
  ScalarCoeff four_i_over_e = ScalarCoeff::rational(4) * ScalarCoeff::i() * ScalarCoeff::sym(sym::e, -1);
  OpExpr b2 = p_plus_eA * (four_i_over_e * sc_dm() * m_plus_dm) -
              OpExpr::scalar(four_i_over_e * sc_dm() * m * m_plus_dm);
  OpExpr c2 = -eA * (four_i_over_e * m_plus_dm * m_plus_dm) +
              OpExpr::scalar(four_i_over_e * sc_dm() * m_plus_dm * m_plus_dm);
  OpExpr d2;
  for (int k = 1; k <= 3; ++k)
    d2 += mul(gam(k), OpExpr::deriv(k, -ScalarCoeff::i()), r) * (four_i_over_e * sc_dm() * sc_dm());
  d2 -= OpExpr::scalar(four_i_over_e * sc_dm() * sc_dm() * m_plus_dm);

  OpExpr collected = b2 + c2 + d2;
  OpExpr kept = collected.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    ScalarCoeff low = c.coeff_of_power(sym::dm, 0) + c.coeff_of_power(sym::dm, 1);
    return {{w, low}};
  });
  log.drop("Eq.428", "terms of order dm^2 and higher", collected - kept);

  OpExpr eq428 = -eA * (four_i_over_e * m * m) + p_minus_eA * (four_i_over_e * m * sc_dm());
  if (kept != eq428)
    throw Error("second_order_correction: Eq.-428 collection check failed:\n" +
                print_expr(kept - eq428));

  // ---- Eq. 429 and the two cancellation checks ----
  OpExpr eq429 = pref(eq428);
  OpExpr eq429_first = alpha_dot(vec_of([](int k) { return OpExpr::a_vec(k); })) *
                       (ScalarCoeff::rational(-1, 3) * sc_kappa() * sc_kappa() * sc_e());
  OpExpr eq429_second;
  for (int k = 1; k <= 3; ++k)
    eq429_second += mul(OpExpr::alpha(k),
                        OpExpr::deriv(k, ScalarCoeff::i()) - OpExpr::a_vec(k) * sc_e(), r);
  eq429_second = eq429_second * (ScalarCoeff::rational(1, 3) * sc_kappa() * sc_kappa() * sc_dm() * sc_inv_m());
  if (eq429 != eq429_first + eq429_second)
    throw Error("second_order_correction: Eq.-429 check failed");

  // Eq. 430/431: the vector-potential rescaling shifts the magnetic term by
  // exactly minus the (a1) contribution
  Hamiltonian scaled = Hamiltonian::dirac();
  scaled.odd = alpha_dot(vec_of([&](int k) {
    return OpExpr::deriv(k, -ScalarCoeff::i()) -
           OpExpr::a_vec(k) * (sc_e() * (ScalarCoeff::one() +
                                     ScalarCoeff::rational(1, 3) * sc_kappa() * sc_kappa()));
  }));
  OpExpr hfw_scaled = pauli_reduce(fw_transform(scaled, 2, r));
  OpExpr magnetic_scaled = hfw_scaled.filter([](const Word& w, const ScalarCoeff&) {
    return w.fields.size() == 1 && w.fields[0].kind == FieldAtom::Kind::BVec &&
           w.fields[0].derivs.empty() && w.derivs.empty();
  });
  ScalarCoeff c_scaled = magnetic_moment_coefficient(magnetic_scaled);
  ScalarCoeff c_shift = c_scaled.coeff_of_power(sym::kappa, 2);
  if (!(c_shift + c_a1).is_zero())
    throw Error("second_order_correction: Eq.-431 does not cancel Eq.-424: shift = " +
                c_shift.str() + ", a1 = " + c_a1.str());
  log.note("Eq.431", "A-rescaling shift " + c_shift.str() + " cancels Eq.-424 term " +
                         c_a1.str() + " exactly");

  // Eq. 429 second term: p and A variations cancel in the FW output
  {
    Hamiltonian h = Hamiltonian::dirac();
    OpExpr g2 = mul(OpExpr::beta(),
                    mul(h.odd, eq429_second, r) + mul(eq429_second, h.odd, r), r) *
                (ScalarCoeff::rational(1, 2) * sc_inv_m());
    OpExpr g2_B = g2.filter([](const Word& w, const ScalarCoeff&) {
      for (auto& f : w.fields)
        if (f.kind == FieldAtom::Kind::BVec) return true;
      return false;
    });
    if (!g2_B.is_zero())
      throw Error("second_order_correction: Eq.-429 p/A cancellation failed");
    log.note("Eq.429", "p and A variations of the second term cancel in the FW output (exact)");
  }

  // ---- group (g), Eq. 432, and Eq. 433 ----
  OpExpr g31 = to_three_plus_one(v2.groups[6], r);
  OpExpr g_kept = g31.filter([](const Word& w, const ScalarCoeff&) {
    bool has_E = false, has_phi = false;
    for (auto& f : w.fields) {
      if (f.kind == FieldAtom::Kind::EVec && f.derivs.empty()) has_E = true;
      if (f.kind == FieldAtom::Kind::Phi && f.derivs.empty()) has_phi = true;
    }
    return has_E && has_phi;
  });
  log.drop("Eq.432", "group (g): pieces without the E phi structure", g31 - g_kept);
  OpExpr g_bound = bind_self_energy_fields(g_kept);
  if (g_bound != alphaE * (ScalarCoeff::rational(6) * sc_dm()))
    throw Error("second_order_correction: Eq.-432 check failed");

  OpExpr d2o_a3g = pref(a3 + g_bound);
  OpExpr eq433 = mul(OpExpr::beta(), alphaE, r) *
                 (ScalarCoeff::rational(-1, 3) * sc_kappa() * sc_kappa() * sc_dm() * sc_inv_m() * sc_e() * sc_inv_m() *
                  ScalarCoeff::i());
  if (d2o_a3g != eq433) throw Error("second_order_correction: Eq.-433 check failed");

  // ---- Eq. 434: FW push and spherical reduction ----
  RuleSet rc = r;
  rc.curl_free_e = true;
  Hamiltonian h = Hamiltonian::dirac();
  OpExpr f434 = mul(OpExpr::beta(), mul(h.odd, d2o_a3g, rc) + mul(d2o_a3g, h.odd, rc), rc) *
                (ScalarCoeff::rational(1, 2) * sc_inv_m());
  OpExpr f_AE = f434.filter([](const Word& w, const ScalarCoeff&) {
    bool has_A = false, has_E = false;
    if (!w.derivs.empty() || w.fields.size() != 2) return false;
    for (auto& f : w.fields) {
      if (f.kind == FieldAtom::Kind::AVec && f.derivs.empty()) has_A = true;
      if (f.kind == FieldAtom::Kind::EVec && f.derivs.empty()) has_E = true;
    }
    return has_A && has_E;
  });
  log.drop("Eq.434", "momentum pieces of the FW push (no moment contribution)", f434 - f_AE);

  OpExpr f_structural = sigma_cross_structural(VecId::A, VecId::E) *
                        (ScalarCoeff::rational(1, 3) * sc_kappa() * sc_kappa() * sc_dm() * sc_inv_m() * sc_e() * sc_e() *
                         sc_inv_m() * sc_inv_m());
  if (expand_structural(f_structural) != f_AE)
    throw Error("second_order_correction: Eq.-434 cross-term structure check failed");

  OpExpr reduced = spherical_reduction(f_structural, /*averaging=*/true, &log);
  OpExpr magnetic = bind_self_energy_fields(materialize_vec_fields(reduced));
  ScalarCoeff c_434 = magnetic_moment_coefficient(magnetic);
  ScalarCoeff want_434 = ScalarCoeff::rational(1, 3) * sc_kappa() * sc_kappa() * sc_dm() * sc_dm() * sc_inv_m() * sc_inv_m();
  if (c_434 != want_434)
    throw Error("second_order_correction: expected +1/3 (kappa dm/m)^2, got " + c_434.str());

  std::vector<Contribution> out;
  out.push_back({"Eq.424 V2 (a1)", c_a1, -se.bind(c_a1, p)});
  out.push_back({"Eq.431 A-rescaling", c_shift, -se.bind(c_shift, p)});
  out.push_back({"Eq.434 V2 (a3 + g)", c_434, -se.bind(c_434, p)});
  return out;
}

// ---------------------------------------------------------------------------
std::vector<Contribution> vacuum_polarization_adjust(const ParticleConfig& p) {
  const ScalarCoeff a_over_pi2 = ScalarCoeff::sym(sym::alpha, 2) * ScalarCoeff::sym(sym::pi, -2);
  std::vector<Contribution> out;
  ScalarCoeff own = -ScalarCoeff::rational(1, 192) * a_over_pi2;
  if (p.name == "electron") {
    out.push_back({"Eq.438 vacuum polarization (pair creation)", own, -own});
  } else {
    out.push_back({"Eq.440 vacuum polarization (mu+ mu-)", own, -own});
    ScalarCoeff electron_loop =
        own * ScalarCoeff(GaussianRational(p.mass_ratio_to_electron));
    out.push_back({"Eq.441 vacuum polarization (e+ e-, mass-ratio ansatz)", electron_loop,
                   -electron_loop});
  }
  return out;
}

MomentReport compute_moment(const ParticleConfig& p, int order, bool vacuum_polarization,
                            const SelfEnergyModel& se) {
  if (order < 1 || order > 2) throw Error("compute_moment: order must be 1 or 2");
  MomentReport rep;
  rep.particle = p;
  rep.order = order;
  rep.vacuum_polarization = vacuum_polarization;

  rep.baseline = baseline_coefficient();
  if (rep.baseline != ScalarCoeff::rational(-1))
    throw Error("compute_moment: FW baseline coefficient is not -1");
  rep.audit.note("Eq.405", "baseline magnetic coefficient -(e/2m) beta sigma.B fixes the sign "
                           "convention: (g-2)/2 contribution = -(delta H coefficient)");

  rep.contributions.push_back(first_order_correction(p, se, &rep.audit));
  if (order >= 2) {
    auto second = second_order_correction(p, se, &rep.audit);
    rep.contributions.insert(rep.contributions.end(), second.begin(), second.end());
  }
  if (vacuum_polarization) {
    auto vp = vacuum_polarization_adjust(p);
    rep.contributions.insert(rep.contributions.end(), vp.begin(), vp.end());
  }
  for (auto& c : rep.contributions) rep.total += c.anomaly;
  return rep;
}

}  // namespace gmoment
