#include "gmoment/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace gmoment {

std::string GaussianRational::str() const {
  auto rat = [](const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
  };
  if (im == 0) return rat(re);
  std::string imag = (im == 1) ? "i" : (im == -1) ? "-i" : rat(im) + "i";
  if (re == 0) return imag;
  std::string s = "(" + rat(re);
  if (im > 0) s += "+";
  return s + imag + ")";
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.str(); }

// ---------------------------------------------------------------------------
namespace {
std::vector<std::string>& symbol_names() {
  static std::vector<std::string> names;
  return names;
}
}  // namespace

SymbolId Symbols::intern(const std::string& name) {
  auto& names = symbol_names();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) return static_cast<SymbolId>(k);
  names.push_back(name);
  return static_cast<SymbolId>(names.size() - 1);
}

const std::string& Symbols::name(SymbolId id) {
  return symbol_names().at(id);
}

bool Symbols::lookup(const std::string& name, SymbolId& out) {
  auto& names = symbol_names();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == name) { out = static_cast<SymbolId>(k); return true; }
  return false;
}

namespace sym {
const SymbolId pi = Symbols::intern("pi");
const SymbolId e = Symbols::intern("e");
const SymbolId m = Symbols::intern("m");
const SymbolId ds = Symbols::intern("ds");
const SymbolId kappa = Symbols::intern("kappa");
const SymbolId alpha = Symbols::intern("alpha");
const SymbolId eps0 = Symbols::intern("eps0");
const SymbolId dm = Symbols::intern("dm");
const SymbolId r0 = Symbols::intern("r0");
const SymbolId phi = Symbols::intern("phi");
const SymbolId m_mu = Symbols::intern("m_mu");
const SymbolId r = Symbols::intern("r");
}  // namespace sym

SymbolMonomial SymbolMonomial::sym(SymbolId s, std::int32_t p) {
  SymbolMonomial m;
  if (p != 0) m.exps.push_back({s, p});
  return m;
}

SymbolMonomial SymbolMonomial::operator*(const SymbolMonomial& o) const {
  SymbolMonomial out;
  std::size_t a = 0, b = 0;
  while (a < exps.size() || b < o.exps.size()) {
    if (b == o.exps.size() || (a < exps.size() && exps[a].first < o.exps[b].first)) {
      out.exps.push_back(exps[a++]);
    } else if (a == exps.size() || o.exps[b].first < exps[a].first) {
      out.exps.push_back(o.exps[b++]);
    } else {
      std::int32_t p = exps[a].second + o.exps[b].second;
      if (p != 0) out.exps.push_back({exps[a].first, p});
      ++a, ++b;
    }
  }
  return out;
}

std::int32_t SymbolMonomial::exponent(SymbolId s) const {
  for (auto& [id, p] : exps)
    if (id == s) return p;
  return 0;
}

std::string SymbolMonomial::str() const {
  std::string s;
  for (auto& [id, p] : exps) {
    if (!s.empty()) s += " ";
    s += Symbols::name(id);
    if (p != 1) s += "^" + std::to_string(p);
  }
  return s;
}

// ---------------------------------------------------------------------------
ScalarCoeff make_canonical(std::vector<std::pair<SymbolMonomial, GaussianRational>> raw) {
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  ScalarCoeff out;
  for (auto& [m, g] : raw) {
    if (!out.parts_.empty() && out.parts_.back().first == m) {
      out.parts_.back().second += g;
      if (out.parts_.back().second.is_zero()) out.parts_.pop_back();
    } else if (!g.is_zero()) {
      out.parts_.push_back({std::move(m), std::move(g)});
    }
  }
  return out;
}

ScalarCoeff::ScalarCoeff(GaussianRational g) {
  if (!g.is_zero()) parts_.push_back({SymbolMonomial::one(), std::move(g)});
}

ScalarCoeff::ScalarCoeff(GaussianRational g, SymbolMonomial m) {
  if (!g.is_zero()) parts_.push_back({std::move(m), std::move(g)});
}

ScalarCoeff ScalarCoeff::operator-() const {
  ScalarCoeff out = *this;
  for (auto& [m, g] : out.parts_) g = -g;
  return out;
}

ScalarCoeff ScalarCoeff::operator+(const ScalarCoeff& o) const {
  std::vector<std::pair<SymbolMonomial, GaussianRational>> raw = parts_;
  raw.insert(raw.end(), o.parts_.begin(), o.parts_.end());
  return make_canonical(std::move(raw));
}

ScalarCoeff ScalarCoeff::operator-(const ScalarCoeff& o) const { return *this + (-o); }

ScalarCoeff ScalarCoeff::operator*(const ScalarCoeff& o) const {
  std::vector<std::pair<SymbolMonomial, GaussianRational>> raw;
  raw.reserve(parts_.size() * o.parts_.size());
  for (auto& [ma, ga] : parts_)
    for (auto& [mb, gb] : o.parts_) raw.push_back({ma * mb, ga * gb});
  return make_canonical(std::move(raw));
}

ScalarCoeff ScalarCoeff::inverse() const {
  if (parts_.size() != 1)
    throw Error("ScalarCoeff::inverse: only single-part coefficients are invertible, got " + str());
  SymbolMonomial m;
  for (auto& [id, p] : parts_[0].first.exps) m.exps.push_back({id, -p});
  return ScalarCoeff(GaussianRational(1) / parts_[0].second, std::move(m));
}

ScalarCoeff ScalarCoeff::coeff_of_power(SymbolId s, std::int32_t p) const {
  std::vector<std::pair<SymbolMonomial, GaussianRational>> raw;
  for (auto& [m, g] : parts_)
    if (m.exponent(s) == p) raw.push_back({m, g});
  return make_canonical(std::move(raw));
}

std::int32_t ScalarCoeff::max_power(SymbolId s) const {
  std::int32_t mx = 0;
  for (auto& [m, g] : parts_) mx = std::max(mx, m.exponent(s));
  return mx;
}

std::int32_t ScalarCoeff::min_power(SymbolId s) const {
  std::int32_t mn = 0;
  for (auto& [m, g] : parts_) mn = std::min(mn, m.exponent(s));
  return mn;
}

bool ScalarCoeff::depends_on(SymbolId s) const {
  for (auto& [m, g] : parts_)
    if (m.exponent(s) != 0) return true;
  return false;
}

ScalarCoeff ScalarCoeff::substitute_once(const std::map<SymbolId, ScalarCoeff>& bindings,
                                         bool& changed) const {
  ScalarCoeff total;
  for (auto& [mono, g] : parts_) {
    ScalarCoeff term(g);
    SymbolMonomial rest;
    for (auto& [id, p] : mono.exps) {
      auto it = bindings.find(id);
      if (it == bindings.end()) {
        rest.exps.push_back({id, p});
        continue;
      }
      changed = true;
      const ScalarCoeff& value = p > 0 ? it->second : it->second.inverse();
      for (std::int32_t k = 0; k < std::abs(p); ++k) term = term * value;
    }
    total += term * ScalarCoeff(GaussianRational(1), std::move(rest));
  }
  return total;
}

ScalarCoeff ScalarCoeff::substitute(const std::map<SymbolId, ScalarCoeff>& bindings) const {
  ScalarCoeff cur = *this;
  for (int iter = 0; iter < 64; ++iter) {
    bool changed = false;
    cur = cur.substitute_once(bindings, changed);
    if (!changed) return cur;
  }
  throw Error("ScalarCoeff::substitute: binding chain did not terminate (cycle?)");
}

ScalarCoeff ScalarCoeff::substitute_square(SymbolId s, const ScalarCoeff& repl) const {
  ScalarCoeff total;
  for (auto& [mono, g] : parts_) {
    ScalarCoeff term(g);
    SymbolMonomial rest;
    for (auto& [id, p] : mono.exps) {
      if (id != s) {
        rest.exps.push_back({id, p});
        continue;
      }
      if (p % 2 != 0)
        throw Error("substitute_square: odd power of " + Symbols::name(s) + " in " + str());
      const ScalarCoeff& value = p > 0 ? repl : repl.inverse();
      for (std::int32_t k = 0; k < std::abs(p) / 2; ++k) term = term * value;
    }
    total += term * ScalarCoeff(GaussianRational(1), std::move(rest));
  }
  return total;
}

std::complex<double> ScalarCoeff::to_float(
    const std::map<SymbolId, std::complex<double>>& bindings) const {
  std::complex<double> total = 0;
  for (auto& [mono, g] : parts_) {
    std::complex<double> v = g.to_complex();
    for (auto& [id, p] : mono.exps) {
      auto it = bindings.find(id);
      if (it == bindings.end())
        throw Error("to_float: unbound symbol '" + Symbols::name(id) + "'");
      v *= std::pow(it->second, p);
    }
    total += v;
  }
  return total;
}

bool ScalarCoeff::single_part(GaussianRational& g, SymbolMonomial& m) const {
  if (parts_.size() != 1) return false;
  m = parts_[0].first;
  g = parts_[0].second;
  return true;
}

std::string ScalarCoeff::str() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (auto& [m, g] : parts_) {
    if (!s.empty()) s += " + ";
    s += g.str();
    if (!m.exps.empty()) s += " " + m.str();
  }
  return parts_.size() > 1 ? "{" + s + "}" : s;
}

ScalarCoeff pow(const ScalarCoeff& base, int p) {
  if (p < 0) return pow(base.inverse(), -p);
  ScalarCoeff out = ScalarCoeff::one();
  for (int k = 0; k < p; ++k) out = out * base;
  return out;
}

}  // namespace gmoment
