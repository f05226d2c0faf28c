#include <doctest.h>

#include <random>

#include "gmoment/scalar.hpp"

using namespace gmoment;

namespace {

ScalarCoeff sym1(SymbolId s, int p = 1) { return ScalarCoeff::sym(s, p); }

GaussianRational random_gaussian(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 9);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

}  // namespace

TEST_CASE("gaussian rational arithmetic is exact") {
  GaussianRational a(Rational(1, 3), Rational(2, 7));
  GaussianRational b(Rational(-5, 6), Rational(1, 2));
  CHECK((a * b) * b.conj() == a * (b * b.conj()));
  CHECK(a / b * b == a);
  CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
}

TEST_CASE("ring axioms hold bit-for-bit on random values") {
  std::mt19937 rng(20240811);
  for (int it = 0; it < 200; ++it) {
    GaussianRational a = random_gaussian(rng), b = random_gaussian(rng), c = random_gaussian(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("scalar_mul spec examples") {
  // (2 pi i) x (-i/pi) -> 2
  ScalarCoeff lhs = ScalarCoeff(GaussianRational(Rational(0), Rational(2))) * sym1(sym::pi);
  ScalarCoeff rhs = ScalarCoeff(GaussianRational(Rational(0), Rational(-1))) * sym1(sym::pi, -1);
  CHECK(lhs * rhs == ScalarCoeff::rational(2));

  // kappa x 1 -> kappa
  CHECK(sym1(sym::kappa) * ScalarCoeff::one() == sym1(sym::kappa));

  // kappa with kappa -> -i ds m, ds -> 2 pi / m  gives  -2 pi i
  std::map<SymbolId, ScalarCoeff> bind;
  bind[sym::kappa] = -ScalarCoeff::i() * sym1(sym::ds) * sym1(sym::m);
  bind[sym::ds] = ScalarCoeff::rational(2) * sym1(sym::pi) * sym1(sym::m, -1);
  ScalarCoeff got = sym1(sym::kappa).substitute(bind);
  CHECK(got == ScalarCoeff(GaussianRational(Rational(0), Rational(-2))) * sym1(sym::pi));
}

TEST_CASE("substitute spec examples") {
  // kappa dm / m with dm -> i e^2 m/(8 pi^3 eps0), e^2 -> 4 pi eps0 alpha,
  // kappa -> -2 pi i  gives  alpha/pi
  ScalarCoeff expr = sym1(sym::kappa) * sym1(sym::dm) * sym1(sym::m, -1);
  std::map<SymbolId, ScalarCoeff> bind;
  bind[sym::dm] = ScalarCoeff::i() * sym1(sym::e, 2) * sym1(sym::m) *
                  ScalarCoeff::rational(1, 8) * sym1(sym::pi, -3) * sym1(sym::eps0, -1);
  ScalarCoeff step1 = expr.substitute(bind);
  ScalarCoeff step2 = step1.substitute_square(
      sym::e, ScalarCoeff::rational(4) * sym1(sym::pi) * sym1(sym::eps0) * sym1(sym::alpha));
  ScalarCoeff step3 = step2.substitute({{sym::kappa,
      ScalarCoeff(GaussianRational(Rational(0), Rational(-2))) * sym1(sym::pi)}});
  CHECK(step3 == sym1(sym::alpha) * sym1(sym::pi, -1));

  // ds -> 2 pi/m in 2 pi/ds -> m
  ScalarCoeff two_pi_over_ds = ScalarCoeff::rational(2) * sym1(sym::pi) * sym1(sym::ds, -1);
  ScalarCoeff m_out = two_pi_over_ds.substitute(
      {{sym::ds, ScalarCoeff::rational(2) * sym1(sym::pi) * sym1(sym::m, -1)}});
  CHECK(m_out == sym1(sym::m));

  // empty bindings -> unchanged
  CHECK(expr.substitute({}) == expr);
}

TEST_CASE("cyclic bindings are rejected") {
  std::map<SymbolId, ScalarCoeff> bind;
  bind[sym::kappa] = sym1(sym::ds);
  bind[sym::ds] = sym1(sym::kappa);
  CHECK_THROWS_AS(sym1(sym::kappa).substitute(bind), Error);
}

TEST_CASE("to_float spec examples") {
  // (1/3)(alpha/pi)^2 at alpha = 1/137.036
  ScalarCoeff expr = ScalarCoeff::rational(1, 3) * sym1(sym::alpha, 2) * sym1(sym::pi, -2);
  std::map<SymbolId, std::complex<double>> bind;
  bind[sym::alpha] = 1.0 / 137.036;
  bind[sym::pi] = 3.14159265358979323846;
  double want = (1.0 / 137.036 / 3.14159265358979323846);
  want = want * want / 3.0;  // independent float route
  CHECK(std::abs(expr.to_float(bind).real() - want) < 1e-18);
  CHECK(expr.to_float(bind).real() == doctest::Approx(1.79850e-6).epsilon(1e-4));

  CHECK(ScalarCoeff::zero().to_float({}) == std::complex<double>(0.0));

  CHECK(ScalarCoeff::rational(63, 192).to_float({}).real() == 0.328125);

  CHECK_THROWS_WITH_AS(expr.to_float({}), doctest::Contains("unbound symbol"), Error);
  std::map<SymbolId, std::complex<double>> only_pi{{sym::pi, 3.14159}};
  CHECK_THROWS_WITH_AS(expr.to_float(only_pi), doctest::Contains("alpha"), Error);
}

TEST_CASE("substitute then to_float equals to_float with composed bindings") {
  std::mt19937 rng(7);
  ScalarCoeff expr = sym1(sym::kappa, 2) * ScalarCoeff::rational(3, 7) +
                     sym1(sym::ds) * sym1(sym::m) * ScalarCoeff::i();
  std::map<SymbolId, ScalarCoeff> bind{{sym::kappa, sym1(sym::ds) * sym1(sym::m) * (-ScalarCoeff::i())}};
  std::map<SymbolId, std::complex<double>> num{{sym::ds, 0.37}, {sym::m, 2.25}};
  std::map<SymbolId, std::complex<double>> num_full = num;
  num_full[sym::kappa] = std::complex<double>(0, -1) * 0.37 * 2.25;
  auto a = expr.substitute(bind).to_float(num);
  auto b = expr.to_float(num_full);
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
}

TEST_CASE("canonical form is construction-order independent") {
  ScalarCoeff a = sym1(sym::e) * sym1(sym::m, -2) + sym1(sym::pi) * ScalarCoeff::rational(5, 3);
  ScalarCoeff b = sym1(sym::pi) * ScalarCoeff::rational(5, 3) + sym1(sym::m, -2) * sym1(sym::e);
  CHECK(a == b);
  CHECK(a.str() == b.str());
}

TEST_CASE("inverse only for single-part coefficients") {
  ScalarCoeff single = ScalarCoeff::rational(3, 4) * sym1(sym::ds, 2);
  CHECK(single * single.inverse() == ScalarCoeff::one());
  ScalarCoeff sum = ScalarCoeff::one() + sym1(sym::ds);
  CHECK_THROWS_AS(sum.inverse(), Error);
}
