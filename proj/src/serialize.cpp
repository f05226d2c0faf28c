#include "gmoment/serialize.hpp"

#include <sstream>

namespace gmoment {

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

std::string gaussian_str(const GaussianRational& g) {
  if (g.im == 0) return rational_str(g.re);
  std::string im = (g.im == 1) ? "i" : (g.im == -1) ? "-i" : rational_str(g.im) + "i";
  if (g.re == 0) return im;
  std::string s = "(" + rational_str(g.re);
  if (g.im > 0) s += "+";
  return s + im + ")";
}

std::string atom_core(const FieldAtom& f) {
  using K = FieldAtom::Kind;
  switch (f.kind) {
    case K::CovA: return "A_" + std::to_string(f.i1);
    case K::Phi: return "phi(x)";
    case K::AVec: return "Av" + std::to_string(f.i1);
    case K::SymA: return "Sym" + std::to_string(f.i1) + std::to_string(f.i2);
    case K::BVec: return "B" + std::to_string(f.i1);
    case K::EVec: return "E" + std::to_string(f.i1);
    case K::Vec: return std::string("vec(") + vec_name(f.u) + "," + std::to_string(f.i1) + ")";
    case K::Cross:
      return std::string("cross(") + vec_name(f.u) + "," + vec_name(f.v) + "," +
             std::to_string(f.i1) + ")";
  }
  return "?";
}

std::string term_str(const Word& w, const SymbolMonomial& mono, const GaussianRational& g) {
  std::string s = gaussian_str(g);
  for (auto& [id, p] : mono.exps) {
    s += " " + Symbols::name(id);
    if (p != 1) s += "^" + std::to_string(p);
  }
  if (w.mask != 0) s += " * " + CliffordBasis::name(w.mask);
  for (auto& f : w.fields) s += " * " + f.str();
  for (auto d : w.derivs) s += " * d" + std::to_string(d);
  return s;
}

}  // namespace

std::string FieldAtom::str() const {
  if (derivs.empty()) return atom_core(*this);
  std::string s = "(";
  for (auto d : derivs) s += "d" + std::to_string(d) + " ";
  return s + atom_core(*this) + ")";
}

std::string Word::str() const {
  std::string s = CliffordBasis::name(mask);
  for (auto& f : fields) s += " * " + f.str();
  for (auto d : derivs) s += " * d" + std::to_string(d);
  return s;
}

std::string OpExpr::str() const { return print_inline(*this); }

std::string print_expr(const OpExpr& e) {
  if (e.is_zero()) return "0\n";
  std::string out;
  for (auto& [w, c] : e.terms())
    for (auto& [mono, g] : c.parts()) out += term_str(w, mono, g) + "\n";
  return out;
}

std::string print_inline(const OpExpr& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (auto& [w, c] : e.terms())
    for (auto& [mono, g] : c.parts()) {
      if (!out.empty()) out += " + ";
      out += term_str(w, mono, g);
    }
  return out;
}

// ---------------------------------------------------------------------------
namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_ws() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (!done() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw Error("parse error: expected '" + std::string(1, c) + "' in: " + s);
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    return s.substr(start, pos - start);
  }
};

Rational parse_rational(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.pos;
  if (!c.done() && (c.peek() == '-' || c.peek() == '+')) ++c.pos;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
  if (!c.done() && c.peek() == '/') {
    ++c.pos;
    while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
  }
  std::string tok = c.s.substr(start, c.pos - start);
  if (tok.empty() || tok == "-" || tok == "+")
    throw Error("parse error: expected rational in: " + c.s);
  return Rational(tok);
}

GaussianRational parse_gaussian(Cursor& c) {
  c.skip_ws();
  if (c.peek() == '(') {
    // could be (re+imi) -- try; a lone parenthesized rational is not produced
    std::size_t save = c.pos;
    c.expect('(');
    Rational re = parse_rational(c);
    c.skip_ws();
    if (c.peek() == '+' || c.peek() == '-') {
      Rational im = parse_rational(c);
      c.expect('i');
      c.expect(')');
      return {re, im};
    }
    c.pos = save;
    throw Error("parse error: bad gaussian in: " + c.s);
  }
  if (c.peek() == 'i') { ++c.pos; return GaussianRational::i(); }
  if (c.peek() == '-' && c.pos + 1 < c.s.size() && c.s[c.pos + 1] == 'i') {
    c.pos += 2;
    return -GaussianRational::i();
  }
  Rational re = parse_rational(c);
  c.skip_ws();
  if (!c.done() && c.peek() == 'i') { ++c.pos; return {Rational(0), re}; }
  return {re, Rational(0)};
}

bool parse_matrix_name(const std::string& name, std::uint8_t& mask, GaussianRational& phase) {
  phase = GaussianRational(1);
  if (name == "beta") { mask = 0b0001; return true; }
  if (name == "gamma5") { mask = 0b1111; phase = GaussianRational::i(); return true; }
  if (name.size() == 6 && name.substr(0, 5) == "alpha") {
    int k = name[5] - '0';
    if (k >= 1 && k <= 3) { mask = static_cast<std::uint8_t>(1u | (1u << k)); return true; }
  }
  if (name.size() == 6 && name.substr(0, 5) == "sigma") {
    int k = name[5] - '0';
    if (k == 1) { mask = 0b1100; phase = GaussianRational::i(); return true; }
    if (k == 2) { mask = 0b1010; phase = -GaussianRational::i(); return true; }
    if (k == 3) { mask = 0b0110; phase = GaussianRational::i(); return true; }
  }
  // g-products: g0, g1g3, ...
  if (name.size() >= 2 && name[0] == 'g' && std::isdigit(static_cast<unsigned char>(name[1]))) {
    std::uint8_t m = 0;
    int sign = 1;
    for (std::size_t i = 0; i + 1 < name.size() + 1; i += 2) {
      if (i + 1 >= name.size() || name[i] != 'g') return false;
      int t = name[i + 1] - '0';
      if (t < 0 || t > 3) return false;
      auto [s2, m2] = CliffordBasis::mul(m, static_cast<std::uint8_t>(1u << t));
      sign *= s2;
      m = m2;
    }
    mask = m;
    phase = GaussianRational(sign);
    return true;
  }
  return false;
}

VecId parse_vec_id(const std::string& s) {
  if (s == "A") return VecId::A;
  if (s == "E") return VecId::E;
  if (s == "B") return VecId::B;
  if (s == "r") return VecId::R;
  throw Error("parse error: unknown vector id '" + s + "'");
}

// parses one field-atom core (no derivs); returns false if the identifier is
// not a field
bool parse_atom_core(Cursor& c, const std::string& name, FieldAtom& out) {
  using K = FieldAtom::Kind;
  out = FieldAtom{};
  if (name.size() == 3 && name.substr(0, 2) == "A_") {
    out.kind = K::CovA;
    out.i1 = static_cast<std::uint8_t>(name[2] - '0');
    return out.i1 <= 3;
  }
  if (name == "phi") {
    c.expect('(');
    if (c.ident() != "x") throw Error("parse error: expected phi(x)");
    c.expect(')');
    out.kind = K::Phi;
    return true;
  }
  if (name.size() == 3 && name.substr(0, 2) == "Av") {
    out.kind = K::AVec;
    out.i1 = static_cast<std::uint8_t>(name[2] - '0');
    return out.i1 >= 1 && out.i1 <= 3;
  }
  if (name.size() == 5 && name.substr(0, 3) == "Sym") {
    out.kind = K::SymA;
    out.i1 = static_cast<std::uint8_t>(name[3] - '0');
    out.i2 = static_cast<std::uint8_t>(name[4] - '0');
    return out.i1 >= 1 && out.i1 <= out.i2 && out.i2 <= 3;
  }
  if (name.size() == 2 && (name[0] == 'B' || name[0] == 'E') &&
      std::isdigit(static_cast<unsigned char>(name[1]))) {
    out.kind = name[0] == 'B' ? K::BVec : K::EVec;
    out.i1 = static_cast<std::uint8_t>(name[1] - '0');
    return out.i1 >= 1 && out.i1 <= 3;
  }
  if (name == "vec" || name == "cross") {
    c.expect('(');
    out.kind = name == "vec" ? K::Vec : K::Cross;
    out.u = parse_vec_id(c.ident());
    c.expect(',');
    if (out.kind == K::Cross) {
      out.v = parse_vec_id(c.ident());
      c.expect(',');
    }
    std::string comp = c.ident();
    out.i1 = static_cast<std::uint8_t>(comp.at(0) - '0');
    c.expect(')');
    return out.i1 >= 1 && out.i1 <= 3;
  }
  return false;
}

// one '*'-separated factor: matrix, field atom, derived field, or derivative
void parse_factor(Cursor& c, Word& w, GaussianRational& phase) {
  c.skip_ws();
  if (c.peek() == '(') {  // derived field: (d1 d2 atom)
    c.expect('(');
    FieldAtom f;
    std::vector<std::uint8_t> derivs;
    for (;;) {
      std::string id = c.ident();
      if (id.size() == 2 && id[0] == 'd' && std::isdigit(static_cast<unsigned char>(id[1]))) {
        derivs.push_back(static_cast<std::uint8_t>(id[1] - '0'));
        continue;
      }
      if (!parse_atom_core(c, id, f)) throw Error("parse error: bad derived field in: " + c.s);
      break;
    }
    c.expect(')');
    f.derivs = std::move(derivs);
    std::sort(f.derivs.begin(), f.derivs.end());
    w.fields.push_back(std::move(f));
    return;
  }
  std::string id = c.ident();
  if (id.empty()) throw Error("parse error: expected factor in: " + c.s);
  if (id.size() == 2 && id[0] == 'd' && std::isdigit(static_cast<unsigned char>(id[1])) &&
      id[1] <= '3') {
    w.derivs.push_back(static_cast<std::uint8_t>(id[1] - '0'));
    return;
  }
  std::uint8_t mask;
  GaussianRational mphase;
  FieldAtom f;
  if (parse_atom_core(c, id, f)) {
    w.fields.push_back(std::move(f));
    return;
  }
  if (parse_matrix_name(id, mask, mphase)) {
    auto [sign, m2] = CliffordBasis::mul(w.mask, mask);
    w.mask = m2;
    phase *= mphase * GaussianRational(sign);
    return;
  }
  throw Error("parse error: unknown factor '" + id + "'");
}

OpExpr::Term parse_term(const std::string& line) {
  Cursor c{line};
  GaussianRational g = parse_gaussian(c);
  SymbolMonomial mono;
  // symbols until '*' or end
  for (;;) {
    c.skip_ws();
    if (c.done() || c.peek() == '*') break;
    std::string name = c.ident();
    if (name.empty()) throw Error("parse error: trailing junk in: " + line);
    std::int32_t p = 1;
    c.skip_ws();
    if (!c.done() && c.peek() == '^') {
      ++c.pos;
      c.skip_ws();
      std::size_t start = c.pos;
      if (c.peek() == '-') ++c.pos;
      while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.pos;
      p = std::stoi(c.s.substr(start, c.pos - start));
    }
    mono = mono * SymbolMonomial::sym(Symbols::intern(name), p);
  }
  Word w;
  GaussianRational phase(1);
  while (c.eat('*')) parse_factor(c, w, phase);
  c.skip_ws();
  if (!c.done()) throw Error("parse error: trailing junk in: " + line);
  std::sort(w.fields.begin(), w.fields.end());
  std::sort(w.derivs.begin(), w.derivs.end());
  return {std::move(w), ScalarCoeff(g * phase, std::move(mono))};
}

}  // namespace

OpExpr parse_expr(const std::string& text) {
  std::vector<OpExpr::Term> raw;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (line.empty() || line[0] == '#' || line == "0") continue;
    raw.push_back(parse_term(line));
  }
  return OpExpr::from_terms(std::move(raw));
}

}  // namespace gmoment
