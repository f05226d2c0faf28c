#pragma once

// Exact coefficient ring: Gaussian rationals times monomials in formal
// commuting symbols (pi, e, m, ds, kappa, ...). Everything here is exact;
// floats only appear through to_float(), which the numeric oracles use.

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gmoment {

using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// GaussianRational: re + im*i with arbitrary-precision rational parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long n) : re(n) {}
  GaussianRational(long num, long den) : re(Rational(num, den)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational operator-() const { return {-re, -im}; }
  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational operator/(const GaussianRational& o) const {
    Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw Error("GaussianRational: division by zero");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

// ---------------------------------------------------------------------------
// Symbol registry. The canonical symbols are pre-interned; modules may
// register extras (dot-product scalars, etc.). Not thread-safe during
// registration; all pipelines intern their symbols up front.
using SymbolId = std::uint16_t;

class Symbols {
 public:
  static SymbolId intern(const std::string& name);
  static const std::string& name(SymbolId id);
  static bool lookup(const std::string& name, SymbolId& out);
};

namespace sym {
extern const SymbolId pi;       // circle constant, kept formal
extern const SymbolId e;        // electron charge
extern const SymbolId m;        // electron mass
extern const SymbolId ds;       // world length delta-s
extern const SymbolId kappa;    // -i ds m
extern const SymbolId alpha;    // fine structure constant
extern const SymbolId eps0;     // vacuum permittivity
extern const SymbolId dm;       // self-energy
extern const SymbolId r0;       // four-dimensional radius
extern const SymbolId phi;      // Coulomb potential value (scalar context)
extern const SymbolId m_mu;     // muon mass
extern const SymbolId r;        // radial coordinate (scalar context)
}  // namespace sym

// Monomial: sorted (symbol, exponent) pairs, exponents nonzero.
struct SymbolMonomial {
  std::vector<std::pair<SymbolId, std::int32_t>> exps;

  static SymbolMonomial one() { return {}; }
  static SymbolMonomial sym(SymbolId s, std::int32_t p = 1);

  SymbolMonomial operator*(const SymbolMonomial& o) const;
  std::int32_t exponent(SymbolId s) const;
  bool operator==(const SymbolMonomial& o) const { return exps == o.exps; }
  bool operator<(const SymbolMonomial& o) const { return exps < o.exps; }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// ScalarCoeff: canonical sum of GaussianRational * SymbolMonomial.
class ScalarCoeff {
 public:
  ScalarCoeff() = default;
  ScalarCoeff(GaussianRational g);
  ScalarCoeff(long n) : ScalarCoeff(GaussianRational(n)) {}
  ScalarCoeff(GaussianRational g, SymbolMonomial m);

  static ScalarCoeff zero() { return {}; }
  static ScalarCoeff one() { return ScalarCoeff(GaussianRational(1)); }
  static ScalarCoeff i() { return ScalarCoeff(GaussianRational::i()); }
  static ScalarCoeff rational(long num, long den = 1) { return ScalarCoeff(GaussianRational(num, den)); }
  static ScalarCoeff sym(SymbolId s, std::int32_t p = 1) {
    return ScalarCoeff(GaussianRational(1), SymbolMonomial::sym(s, p));
  }

  bool is_zero() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<std::pair<SymbolMonomial, GaussianRational>>& parts() const { return parts_; }

  ScalarCoeff operator-() const;
  ScalarCoeff operator+(const ScalarCoeff& o) const;
  ScalarCoeff operator-(const ScalarCoeff& o) const;
  ScalarCoeff operator*(const ScalarCoeff& o) const;
  ScalarCoeff& operator+=(const ScalarCoeff& o) { return *this = *this + o; }
  ScalarCoeff& operator*=(const ScalarCoeff& o) { return *this = *this * o; }
  bool operator==(const ScalarCoeff& o) const { return parts_ == o.parts_; }
  bool operator!=(const ScalarCoeff& o) const { return !(*this == o); }

  // Multiplicative inverse; defined only for single-part coefficients.
  ScalarCoeff inverse() const;

  // sub-sum of parts whose exponent of s equals p
  ScalarCoeff coeff_of_power(SymbolId s, std::int32_t p) const;
  std::int32_t max_power(SymbolId s) const;
  std::int32_t min_power(SymbolId s) const;
  bool depends_on(SymbolId s) const;

  // Eliminates every bound symbol. Chained bindings are resolved by repeated
  // passes; a cycle is reported after the iteration bound.
  ScalarCoeff substitute(const std::map<SymbolId, ScalarCoeff>& bindings) const;

  // Replaces s^(2k) -> repl^k. Odd powers of s are an error.
  ScalarCoeff substitute_square(SymbolId s, const ScalarCoeff& repl) const;

  // IEEE evaluation; every remaining symbol must be bound.
  std::complex<double> to_float(const std::map<SymbolId, std::complex<double>>& bindings) const;

  // If *this == q * m for a single monomial, return q and m.
  bool single_part(GaussianRational& g, SymbolMonomial& m) const;

  std::string str() const;

 private:
  ScalarCoeff substitute_once(const std::map<SymbolId, ScalarCoeff>& bindings, bool& changed) const;
  // invariant: sorted by monomial, no zero coefficients, unique monomials
  std::vector<std::pair<SymbolMonomial, GaussianRational>> parts_;
  friend ScalarCoeff make_canonical(std::vector<std::pair<SymbolMonomial, GaussianRational>>);
};

ScalarCoeff make_canonical(std::vector<std::pair<SymbolMonomial, GaussianRational>> raw);

ScalarCoeff pow(const ScalarCoeff& base, int p);

}  // namespace gmoment
