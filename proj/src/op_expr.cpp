#include "gmoment/op_expr.hpp"

#include <algorithm>
#include <bit>

namespace gmoment {

namespace {
constexpr int kAtomRewriteBudget = 64;

int popcount4(std::uint8_t x) { return std::popcount(static_cast<unsigned>(x & 0xF)); }

// eps_{ijk} over 1..3
int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) return 1;
  return -1;
}
int third_index(int a, int b) { return 6 - a - b; }
}  // namespace

// ---------------------------------------------------------------------------
std::pair<int, std::uint8_t> CliffordBasis::mul(std::uint8_t a, std::uint8_t b) {
  int sign = 1;
  std::uint8_t cur = a;
  for (int t = 0; t < 4; ++t) {
    if (!(b & (1u << t))) continue;
    if (popcount4(static_cast<std::uint8_t>(cur >> (t + 1))) % 2) sign = -sign;
    if (cur & (1u << t)) {
      if (t > 0) sign = -sign;  // (gamma^k)^2 = -1
      cur &= static_cast<std::uint8_t>(~(1u << t));
    } else {
      cur |= static_cast<std::uint8_t>(1u << t);
    }
  }
  return {sign, cur};
}

bool CliffordBasis::commutes_with_beta(std::uint8_t mask) {
  return popcount4(mask & 0b1110) % 2 == 0;
}

Mat4 CliffordBasis::matrix(std::uint8_t mask) {
  const GammaRep& rep = GammaRep::dirac();
  Mat4 out = mat4_identity();
  for (int t = 0; t < 4; ++t)
    if (mask & (1u << t)) out = out * rep.gamma_upper[t];
  return out;
}

std::string CliffordBasis::name(std::uint8_t mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int t = 0; t < 4; ++t)
    if (mask & (1u << t)) s += "g" + std::to_string(t);
  return s;
}

const char* vec_name(VecId v) {
  switch (v) {
    case VecId::A: return "A";
    case VecId::E: return "E";
    case VecId::B: return "B";
    case VecId::R: return "r";
  }
  return "?";
}

// ---------------------------------------------------------------------------
namespace {

using AtomSum = std::vector<std::pair<FieldAtom, GaussianRational>>;

void erase_one(std::vector<std::uint8_t>& v, std::uint8_t x) {
  v.erase(std::find(v.begin(), v.end(), x));
}

int count_of(const std::vector<std::uint8_t>& v, std::uint8_t x) {
  return static_cast<int>(std::count(v.begin(), v.end(), x));
}

int max_spatial(const std::vector<std::uint8_t>& v) {
  int mx = 0;
  for (auto d : v)
    if (d != 0) mx = std::max<int>(mx, d);
  return mx;
}

// one rewriting step on a single atom; false if already canonical
bool rewrite_step(const FieldAtom& f, const RuleSet& rules, AtomSum& out) {
  using K = FieldAtom::Kind;
  if (rules.static_fields && count_of(f.derivs, 0) > 0) return true;  // out stays empty

  switch (f.kind) {
    case K::CovA: {
      if (rules.lorenz_gauge && f.i1 == 0 && count_of(f.derivs, 0) > 0) {
        for (int k = 1; k <= 3; ++k) {
          FieldAtom g = f;
          g.i1 = static_cast<std::uint8_t>(k);
          erase_one(g.derivs, 0);
          g.derivs.push_back(static_cast<std::uint8_t>(k));
          std::sort(g.derivs.begin(), g.derivs.end());
          out.push_back({std::move(g), GaussianRational(1)});
        }
        return true;
      }
      if (rules.vacuum_field && count_of(f.derivs, 0) >= 2) {
        for (int k = 1; k <= 3; ++k) {
          FieldAtom g = f;
          erase_one(g.derivs, 0);
          erase_one(g.derivs, 0);
          g.derivs.push_back(static_cast<std::uint8_t>(k));
          g.derivs.push_back(static_cast<std::uint8_t>(k));
          std::sort(g.derivs.begin(), g.derivs.end());
          out.push_back({std::move(g), GaussianRational(1)});
        }
        return true;
      }
      return false;
    }
    case K::Phi: {
      if (rules.e_def && max_spatial(f.derivs) > 0) {
        int mu = max_spatial(f.derivs);
        FieldAtom g;
        g.kind = K::EVec;
        g.i1 = static_cast<std::uint8_t>(mu);
        g.derivs = f.derivs;
        erase_one(g.derivs, static_cast<std::uint8_t>(mu));
        out.push_back({std::move(g), GaussianRational(-1)});
        return true;
      }
      return false;
    }
    case K::AVec: {
      if (rules.ab_split && max_spatial(f.derivs) > 0) {
        int mu = 0;
        for (auto d : f.derivs)
          if (d != 0) { mu = d; break; }
        std::vector<std::uint8_t> rest = f.derivs;
        erase_one(rest, static_cast<std::uint8_t>(mu));
        int b = f.i1;
        FieldAtom s;
        s.kind = K::SymA;
        s.i1 = static_cast<std::uint8_t>(std::min(mu, b));
        s.i2 = static_cast<std::uint8_t>(std::max(mu, b));
        s.derivs = rest;
        out.push_back({std::move(s), GaussianRational(1)});
        if (mu != b) {
          int k = third_index(mu, b);
          FieldAtom bb;
          bb.kind = K::BVec;
          bb.i1 = static_cast<std::uint8_t>(k);
          bb.derivs = rest;
          out.push_back({std::move(bb), GaussianRational(eps3(mu, b, k), 2)});
        }
        return true;
      }
      return false;
    }
    case K::SymA: {
      if (rules.coulomb_gauge && f.i1 == 3 && f.i2 == 3) {
        for (int k = 1; k <= 2; ++k) {
          FieldAtom g = f;
          g.i1 = g.i2 = static_cast<std::uint8_t>(k);
          out.push_back({std::move(g), GaussianRational(-1)});
        }
        return true;
      }
      // index ordering identity: d_a Sym_bc = d_b Sym_ac + (1/2) eps_abk d_c B_k
      int a = max_spatial(f.derivs);
      int b = f.i1, c = f.i2;
      if (a > b) {
        FieldAtom s;
        s.kind = K::SymA;
        s.i1 = static_cast<std::uint8_t>(std::min(a, c));
        s.i2 = static_cast<std::uint8_t>(std::max(a, c));
        s.derivs = f.derivs;
        erase_one(s.derivs, static_cast<std::uint8_t>(a));
        s.derivs.push_back(static_cast<std::uint8_t>(b));
        std::sort(s.derivs.begin(), s.derivs.end());
        out.push_back({std::move(s), GaussianRational(1)});
        int k = third_index(a, b);
        FieldAtom bb;
        bb.kind = K::BVec;
        bb.i1 = static_cast<std::uint8_t>(k);
        bb.derivs = f.derivs;
        erase_one(bb.derivs, static_cast<std::uint8_t>(a));
        bb.derivs.push_back(static_cast<std::uint8_t>(c));
        std::sort(bb.derivs.begin(), bb.derivs.end());
        out.push_back({std::move(bb), GaussianRational(eps3(a, b, k), 2)});
        return true;
      }
      return false;
    }
    case K::BVec: {
      // div B = 0: eliminate (d_3 ... B_3)
      if (f.i1 == 3 && count_of(f.derivs, 3) > 0) {
        for (int k = 1; k <= 2; ++k) {
          FieldAtom g = f;
          g.i1 = static_cast<std::uint8_t>(k);
          erase_one(g.derivs, 3);
          g.derivs.push_back(static_cast<std::uint8_t>(k));
          std::sort(g.derivs.begin(), g.derivs.end());
          out.push_back({std::move(g), GaussianRational(-1)});
        }
        return true;
      }
      return false;
    }
    case K::EVec: {
      if (rules.curl_free_e) {
        // all spatial indices (derivs + component) are symmetric; canonical
        // form keeps the largest as the component
        std::vector<int> sp;
        for (auto d : f.derivs)
          if (d != 0) sp.push_back(d);
        sp.push_back(f.i1);
        std::sort(sp.begin(), sp.end());
        FieldAtom g = f;
        g.i1 = static_cast<std::uint8_t>(sp.back());
        g.derivs.clear();
        for (auto d : f.derivs)
          if (d == 0) g.derivs.push_back(0);
        for (std::size_t i = 0; i + 1 < sp.size(); ++i)
          g.derivs.push_back(static_cast<std::uint8_t>(sp[i]));
        std::sort(g.derivs.begin(), g.derivs.end());
        if (!(g == f)) {
          out.push_back({std::move(g), GaussianRational(1)});
          return true;
        }
      }
      return false;
    }
    case K::Vec:
    case K::Cross:
      return false;
  }
  return false;
}

}  // namespace

AtomSum canon_atom(FieldAtom f, const RuleSet& rules) {
  AtomSum work{{std::move(f), GaussianRational(1)}};
  for (int step = 0; step < kAtomRewriteBudget; ++step) {
    AtomSum next;
    bool changed = false;
    for (auto& [atom, c] : work) {
      AtomSum rewritten;
      if (rewrite_step(atom, rules, rewritten)) {
        changed = true;
        for (auto& [a2, c2] : rewritten) next.push_back({std::move(a2), c * c2});
      } else {
        next.push_back({std::move(atom), c});
      }
    }
    work = std::move(next);
    if (!changed) return work;
  }
  throw Error("atom rewriting did not terminate (cycle in rule set?)");
}

AtomSum derive_atom(const FieldAtom& f, int mu, const RuleSet& rules) {
  FieldAtom g = f;
  g.derivs.push_back(static_cast<std::uint8_t>(mu));
  std::sort(g.derivs.begin(), g.derivs.end());
  return canon_atom(std::move(g), rules);
}

// ---------------------------------------------------------------------------
OpExpr OpExpr::from_terms(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  OpExpr out;
  for (auto& [w, c] : raw) {
    if (c.is_zero()) continue;
    if (!out.terms_.empty() && out.terms_.back().first == w) {
      out.terms_.back().second += c;
      if (out.terms_.back().second.is_zero()) out.terms_.pop_back();
    } else {
      out.terms_.push_back({std::move(w), std::move(c)});
    }
  }
  return out;
}

OpExpr OpExpr::scalar(ScalarCoeff c) {
  return from_terms({{Word{}, std::move(c)}});
}

OpExpr OpExpr::matrix(std::uint8_t mask, ScalarCoeff c) {
  Word w;
  w.mask = mask;
  return from_terms({{std::move(w), std::move(c)}});
}

OpExpr OpExpr::gamma_upper(int mu) { return matrix(static_cast<std::uint8_t>(1u << mu)); }

OpExpr OpExpr::gamma_lower(int mu) {
  return matrix(static_cast<std::uint8_t>(1u << mu),
                ScalarCoeff(GaussianRational(mu == 0 ? 1 : -1)));
}

OpExpr OpExpr::alpha(int k) { return matrix(static_cast<std::uint8_t>(1u | (1u << k))); }

OpExpr OpExpr::sigma(int k) {
  switch (k) {
    case 1: return matrix(0b1100, ScalarCoeff::i());
    case 2: return matrix(0b1010, -ScalarCoeff::i());
    case 3: return matrix(0b0110, ScalarCoeff::i());
  }
  throw Error("sigma: index out of range");
}

OpExpr OpExpr::gamma5() { return matrix(0b1111, ScalarCoeff::i()); }

OpExpr OpExpr::deriv(int mu, ScalarCoeff c) {
  Word w;
  w.derivs.push_back(static_cast<std::uint8_t>(mu));
  return from_terms({{std::move(w), std::move(c)}});
}

OpExpr OpExpr::deriv_upper(int mu) {
  return deriv(mu, ScalarCoeff(GaussianRational(mu == 0 ? 1 : -1)));
}

OpExpr OpExpr::field(FieldAtom f, ScalarCoeff c) {
  Word w;
  w.fields.push_back(std::move(f));
  return from_terms({{std::move(w), std::move(c)}});
}

OpExpr OpExpr::cov_A(int mu) {
  FieldAtom f;
  f.kind = FieldAtom::Kind::CovA;
  f.i1 = static_cast<std::uint8_t>(mu);
  return field(std::move(f));
}

OpExpr OpExpr::phi() {
  FieldAtom f;
  f.kind = FieldAtom::Kind::Phi;
  return field(std::move(f));
}

OpExpr OpExpr::a_vec(int k) {
  FieldAtom f;
  f.kind = FieldAtom::Kind::AVec;
  f.i1 = static_cast<std::uint8_t>(k);
  return field(std::move(f));
}

OpExpr OpExpr::e_vec(int k) {
  FieldAtom f;
  f.kind = FieldAtom::Kind::EVec;
  f.i1 = static_cast<std::uint8_t>(k);
  return field(std::move(f));
}

OpExpr OpExpr::b_vec(int k) {
  FieldAtom f;
  f.kind = FieldAtom::Kind::BVec;
  f.i1 = static_cast<std::uint8_t>(k);
  return field(std::move(f));
}

OpExpr OpExpr::vec_comp(VecId u, int k) {
  FieldAtom f;
  f.kind = FieldAtom::Kind::Vec;
  f.u = u;
  f.i1 = static_cast<std::uint8_t>(k);
  return field(std::move(f));
}

OpExpr OpExpr::cross_comp(VecId u, VecId v, int k) {
  if (static_cast<int>(u) > static_cast<int>(v))
    return cross_comp(v, u, k) * ScalarCoeff(GaussianRational(-1));
  if (u == v) return zero();
  FieldAtom f;
  f.kind = FieldAtom::Kind::Cross;
  f.u = u;
  f.v = v;
  f.i1 = static_cast<std::uint8_t>(k);
  return field(std::move(f));
}

OpExpr OpExpr::operator-() const {
  OpExpr out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

OpExpr OpExpr::operator+(const OpExpr& o) const {
  std::vector<Term> raw = terms_;
  raw.insert(raw.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(std::move(raw));
}

OpExpr OpExpr::operator-(const OpExpr& o) const { return *this + (-o); }

OpExpr OpExpr::operator*(const OpExpr& o) const { return mul(*this, o, RuleSet::base()); }

OpExpr OpExpr::operator*(const ScalarCoeff& c) const {
  std::vector<Term> raw;
  raw.reserve(terms_.size());
  for (auto& [w, cc] : terms_) raw.push_back({w, cc * c});
  return from_terms(std::move(raw));
}

OpExpr OpExpr::map_terms(
    const std::function<std::vector<Term>(const Word&, const ScalarCoeff&)>& fn) const {
  std::vector<Term> raw;
  for (auto& [w, c] : terms_) {
    auto mapped = fn(w, c);
    raw.insert(raw.end(), mapped.begin(), mapped.end());
  }
  return from_terms(std::move(raw));
}

OpExpr OpExpr::filter(const std::function<bool(const Word&, const ScalarCoeff&)>& pred) const {
  std::vector<Term> raw;
  for (auto& t : terms_)
    if (pred(t.first, t.second)) raw.push_back(t);
  return from_terms(std::move(raw));
}

OpExpr OpExpr::grade_filter(SymbolId s, std::int32_t power) const {
  std::vector<Term> raw;
  for (auto& [w, c] : terms_) {
    ScalarCoeff part = c.coeff_of_power(s, power);
    if (!part.is_zero()) raw.push_back({w, std::move(part)});
  }
  return from_terms(std::move(raw));
}

std::int32_t OpExpr::min_grade(SymbolId s) const {
  std::int32_t mn = 0;
  bool first = true;
  for (auto& [w, c] : terms_)
    for (auto& [mono, g] : c.parts()) {
      std::int32_t p = mono.exponent(s);
      mn = first ? p : std::min(mn, p);
      first = false;
    }
  return mn;
}

std::int32_t OpExpr::max_grade(SymbolId s) const {
  std::int32_t mx = 0;
  bool first = true;
  for (auto& [w, c] : terms_)
    for (auto& [mono, g] : c.parts()) {
      std::int32_t p = mono.exponent(s);
      mx = first ? p : std::max(mx, p);
      first = false;
    }
  return mx;
}

OpExpr OpExpr::substitute(const std::map<SymbolId, ScalarCoeff>& bindings) const {
  std::vector<Term> raw;
  for (auto& [w, c] : terms_) raw.push_back({w, c.substitute(bindings)});
  return from_terms(std::move(raw));
}

OpExpr OpExpr::scale_coeffs(const std::function<ScalarCoeff(const ScalarCoeff&)>& fn) const {
  std::vector<Term> raw;
  for (auto& [w, c] : terms_) raw.push_back({w, fn(c)});
  return from_terms(std::move(raw));
}

// ---------------------------------------------------------------------------
OpExpr mul(const OpExpr& a, const OpExpr& b, const RuleSet& rules) {
  std::vector<OpExpr::Term> raw;
  for (auto& [w1, c1] : a.terms()) {
    for (auto& [w2, c2] : b.terms()) {
      auto [sign, mask] = CliffordBasis::mul(w1.mask, w2.mask);
      // push w1's derivative operators through w2's fields (Leibniz)
      struct Part {
        std::vector<FieldAtom> fields;
        std::vector<std::uint8_t> passed;  // derivatives that passed through
        GaussianRational c;
      };
      std::vector<Part> parts{{w2.fields, {}, GaussianRational(1)}};
      for (std::uint8_t mu : w1.derivs) {
        std::vector<Part> next;
        for (auto& p : parts) {
          for (std::size_t i = 0; i < p.fields.size(); ++i) {
            for (auto& [atom, s] : derive_atom(p.fields[i], mu, rules)) {
              Part q = p;
              q.fields[i] = atom;
              q.c = p.c * s;
              next.push_back(std::move(q));
            }
          }
          Part q = p;
          q.passed.push_back(mu);
          next.push_back(std::move(q));
        }
        parts = std::move(next);
      }
      ScalarCoeff base = c1 * c2 * ScalarCoeff(GaussianRational(sign));
      for (auto& p : parts) {
        Word w;
        w.mask = mask;
        w.fields = w1.fields;
        w.fields.insert(w.fields.end(), p.fields.begin(), p.fields.end());
        std::sort(w.fields.begin(), w.fields.end());
        w.derivs = p.passed;
        w.derivs.insert(w.derivs.end(), w2.derivs.begin(), w2.derivs.end());
        std::sort(w.derivs.begin(), w.derivs.end());
        raw.push_back({std::move(w), base * ScalarCoeff(p.c)});
      }
    }
  }
  return OpExpr::from_terms(std::move(raw));
}

OpExpr commutator(const OpExpr& a, const OpExpr& b, const RuleSet& rules) {
  return mul(a, b, rules) - mul(b, a, rules);
}

OpExpr anticommutator(const OpExpr& a, const OpExpr& b, const RuleSet& rules) {
  return mul(a, b, rules) + mul(b, a, rules);
}

OpExpr apply_rules(const OpExpr& e, const RuleSet& rules) {
  return e.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    std::vector<std::pair<std::vector<FieldAtom>, GaussianRational>> parts{
        {{}, GaussianRational(1)}};
    for (auto& f : w.fields) {
      auto sum = canon_atom(f, rules);
      std::vector<std::pair<std::vector<FieldAtom>, GaussianRational>> next;
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
      out.push_back({std::move(w2), c * ScalarCoeff(cc)});
    }
    return out;
  });
}

OpExpr normalize(const OpExpr& e, const RuleSet& rules) { return apply_rules(e, rules); }

OpExpr to_three_plus_one(const OpExpr& e, const RuleSet& rules) {
  return e.map_terms([&](const Word& w, const ScalarCoeff& c) -> std::vector<OpExpr::Term> {
    std::vector<std::pair<std::vector<FieldAtom>, GaussianRational>> parts{
        {{}, GaussianRational(1)}};
    for (auto& f : w.fields) {
      AtomSum sum;
      if (f.kind == FieldAtom::Kind::CovA) {
        FieldAtom base;
        GaussianRational s0(1);
        if (f.i1 == 0) {
          base.kind = FieldAtom::Kind::Phi;
        } else {
          base.kind = FieldAtom::Kind::AVec;
          base.i1 = f.i1;
          s0 = GaussianRational(-1);
        }
        sum = {{base, s0}};
        for (auto mu : f.derivs) {
          AtomSum next;
          for (auto& [atom, s] : sum)
            for (auto& [a2, s2] : derive_atom(atom, mu, rules)) next.push_back({a2, s * s2});
          sum = std::move(next);
        }
      } else {
        sum = canon_atom(f, rules);
      }
      std::vector<std::pair<std::vector<FieldAtom>, GaussianRational>> next;
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
      out.push_back({std::move(w2), c * ScalarCoeff(cc)});
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
OpExpr dot3(const OpVec3& a, const OpVec3& b, const RuleSet& rules) {
  OpExpr out;
  for (int k = 0; k < 3; ++k) out += mul(a[k], b[k], rules);
  return out;
}

OpVec3 cross3(const OpVec3& a, const OpVec3& b, const RuleSet& rules) {
  OpVec3 out;
  for (int k = 1; k <= 3; ++k) {
    OpExpr s;
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        int e = eps3(k, i, j);
        if (e != 0) s += mul(a[i - 1], b[j - 1], rules) * ScalarCoeff(GaussianRational(e));
      }
    out[k - 1] = s;
  }
  return out;
}

OpExpr sigma_dot(const OpVec3& a) {
  OpExpr out;
  for (int k = 1; k <= 3; ++k) out += OpExpr::sigma(k) * a[k - 1];
  return out;
}

OpExpr alpha_dot(const OpVec3& a) {
  OpExpr out;
  for (int k = 1; k <= 3; ++k) out += OpExpr::alpha(k) * a[k - 1];
  return out;
}

OpVec3 vec_of(const std::function<OpExpr(int)>& f) { return {f(1), f(2), f(3)}; }

Mat4 to_matrix(const OpExpr& e) {
  Mat4 out = mat4_zero();
  for (auto& [w, c] : e.terms()) {
    if (!w.fields.empty() || !w.derivs.empty())
      throw Error("to_matrix: expression contains fields or derivatives");
    GaussianRational g;
    SymbolMonomial m;
    if (!c.single_part(g, m) || !m.exps.empty())
      throw Error("to_matrix: coefficient is not a plain Gaussian rational: " + c.str());
    out = out + CliffordBasis::matrix(w.mask) * g;
  }
  return out;
}

}  // namespace gmoment
