#include <doctest.h>

#include <random>

#include <Eigen/LU>

#include "gmoment/dirac.hpp"
#include "gmoment/numeric.hpp"
#include "gmoment/serialize.hpp"

using namespace gmoment;

TEST_CASE("wave equation reproduces the printed V1 and V2") {
  WaveEquationResult r2 = derive_wave_equation(2);
  REQUIRE(r2.v_series.size() == 2);

  const RuleSet cov = RuleSet::covariant();
  OpExpr D = dirac_slash_derivative(), A = dirac_slash_potential();
  OpExpr v1_want = commutator(D, A, cov) *
                   (ScalarCoeff::rational(1, 2) * ScalarCoeff::sym(sym::ds) * ScalarCoeff::sym(sym::e));
  CHECK(r2.v_series[0] == v1_want);

  OpExpr G;
  for (int x = 0; x < 4; ++x)
    G += mul(OpExpr::gamma_upper(x),
             OpExpr::deriv(x, ScalarCoeff::i()) + OpExpr::cov_A(x) * ScalarCoeff::sym(sym::e), cov);
  OpExpr v2_want = commutator(commutator(D, A, cov), G, cov) *
                   (-ScalarCoeff::rational(1, 12) * ScalarCoeff::i() *
                    ScalarCoeff::sym(sym::ds, 2) * ScalarCoeff::sym(sym::e));
  CHECK(r2.v_series[1] == v2_want);

  CHECK(r2.mass_term == ScalarCoeff::sym(sym::m));
  CHECK(r2.dirac_part == dirac_operator() - OpExpr::scalar(ScalarCoeff::sym(sym::m)));

  // free-particle case: dropping every field-carrying term kills V entirely
  auto no_fields = [](const Word& w, const ScalarCoeff&) { return w.fields.empty(); };
  CHECK(r2.v_series[0].filter(no_fields).is_zero());
  CHECK(r2.v_series[1].filter(no_fields).is_zero());
  CHECK(r2.dirac_part.filter(no_fields) ==
        dirac_slash_derivative() * ScalarCoeff::i() - OpExpr::scalar(ScalarCoeff::sym(sym::m)));

  CHECK_THROWS_AS(derive_wave_equation(0), Error);
  CHECK_THROWS_AS(derive_wave_equation(3), Error);
}

TEST_CASE("v1_to_pauli_form verifies both printed rewritings") {
  WaveEquationResult r = derive_wave_equation(1);
  PauliForms p = v1_to_pauli_form(r.v_series[0]);
  CHECK(!p.covariant.is_zero());
  CHECK(!p.three_plus_one.is_zero());
  // the two delta parts reassemble -beta V1
  RuleSet r31;
  r31.static_fields = true;
  CHECK(p.delta_even + p.delta_odd == mul(-OpExpr::beta(), p.three_plus_one, r31));
  // even part commutes with beta, odd part anticommutes
  for (auto& [w, c] : p.delta_even.terms()) CHECK(w.is_even());
  for (auto& [w, c] : p.delta_odd.terms()) CHECK(!w.is_even());
  // wrong grade is rejected
  CHECK_THROWS_AS(v1_to_pauli_form(dirac_slash_derivative()), Error);
}

TEST_CASE("hermiticity condition spec cases") {
  CHECK(hermiticity_condition(-dirac_slash_potential() * ScalarCoeff::sym(sym::e)).hermitian);
  CHECK(hermiticity_condition(OpExpr::zero()).hermitian);
  // gamma5 = i g0 g1 g2 g3 violates the condition (witness included)
  auto g5 = hermiticity_condition(OpExpr::gamma5());
  CHECK(!g5.hermitian);
  CHECK(!g5.detail.empty());
  // while the bare product g0 g1 g2 g3 satisfies it
  CHECK(hermiticity_condition(OpExpr::matrix(0b1111)).hermitian);
  CHECK_THROWS_AS(hermiticity_condition(dirac_slash_derivative()), Error);
}

TEST_CASE("pseudo-unitarity residual") {
  std::mt19937 rng(2025);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int it = 0; it < 20; ++it) {
    Mat4c M = coupling_matrix(1.0, {u(rng), u(rng), u(rng), u(rng)});
    CHECK(pseudo_unitarity_residual(M, 0.7) <= 1e-10);
  }
  CHECK(pseudo_unitarity_residual(Mat4c::Identity(), 1.0) <= 1e-10);
  // M = iI violates the hermiticity condition: U = e^{-ds} I
  CHECK(pseudo_unitarity_residual(std::complex<double>(0, 1) * Mat4c::Identity(), 1.0) > 0.1);
}

TEST_CASE("density is conserved under pseudo-unitary evolution") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GammaRep& rep = GammaRep::dirac();
  for (int it = 0; it < 20; ++it) {
    Mat4c M = coupling_matrix(0.8, {u(rng), u(rng), u(rng), u(rng)});
    Mat4c U = expm(std::complex<double>(0, 1) * 0.5 * M);
    Eigen::Vector4cd psi;
    for (int i = 0; i < 4; ++i) psi(i) = std::complex<double>(u(rng), u(rng));
    CHECK(std::abs(density(rep, U * psi) - density(rep, psi)) <= 1e-10);
  }
}

TEST_CASE("quantization kernel check") {
  Mat4c Z = Mat4c::Zero();
  constexpr double two_pi = 6.283185307179586476925;
  SUBCASE("planted diagonal: -2 pi i and zeros") {
    Z(0, 0) = std::complex<double>(0, -two_pi);
    auto rep = quantization_kernel_check(Z);
    CHECK(rep.flagged == 4);
    CHECK(rep.kernel_dim == 4);
    for (auto& e : rep.entries)
      if (std::abs(e.eigenvalue + std::complex<double>(0, two_pi)) < 1e-9) CHECK(e.n == 1);
  }
  SUBCASE("-pi i is not flagged") {
    Z(0, 0) = std::complex<double>(0, -two_pi / 2);
    auto rep = quantization_kernel_check(Z);
    CHECK(rep.flagged == 3);
    CHECK(rep.kernel_dim == 3);
  }
  SUBCASE("random similarity of 2 pi i (1,-1,2,0)") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat4c D = Mat4c::Zero();
    D(0, 0) = std::complex<double>(0, two_pi);
    D(1, 1) = std::complex<double>(0, -two_pi);
    D(2, 2) = std::complex<double>(0, 2 * two_pi);
    D(3, 3) = 0;
    for (int it = 0; it < 10; ++it) {
      Mat4c S;
      do {
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) S(i, j) = std::complex<double>(u(rng), u(rng));
      } while (std::abs(S.determinant()) < 0.1);
      Mat4c Zs = S * D * S.inverse();
      auto rep = quantization_kernel_check(Zs);
      CHECK(rep.flagged == 4);
      CHECK(rep.kernel_dim == 4);
    }
  }
  SUBCASE("ill-conditioned eigenbasis is rejected") {
    Mat4c J = Mat4c::Zero();  // a Jordan block has a defective eigenbasis
    J(0, 1) = 1.0;
    CHECK_THROWS_WITH_AS(quantization_kernel_check(J), doctest::Contains("ill-conditioned"), Error);
  }
}

TEST_CASE("invariant-parameter chain rule at the representation level") {
  // gamma^mu d_mu f(s(x)) = f'(s) * (gamma_nu x^nu) / s for scalar f,
  // s = sqrt(g_{mu nu} x^mu x^nu); checked by central finite differences
  const GammaRep& rep = GammaRep::dirac();
  auto f = [](double s) { return s * s * s + 2.0 * s * s - s + 1.0; };
  auto fp = [](double s) { return 3.0 * s * s + 4.0 * s - 1.0; };
  std::array<double, 4> x{2.0, 0.3, -0.4, 0.5};  // timelike point
  auto s_of = [&](const std::array<double, 4>& y) {
    return std::sqrt(y[0] * y[0] - y[1] * y[1] - y[2] * y[2] - y[3] * y[3]);
  };
  const double h = 1e-5;
  Mat4c lhs = Mat4c::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    auto xp = x, xm = x;
    xp[mu] += h;
    xm[mu] -= h;
    double df = (f(s_of(xp)) - f(s_of(xm))) / (2 * h);
    lhs += to_numeric(rep.gamma_upper[mu]) * df;
  }
  double s = s_of(x);
  Mat4c slash = Mat4c::Zero();
  for (int mu = 0; mu < 4; ++mu) slash += to_numeric(rep.gamma_lower[mu]) * x[mu];
  Mat4c rhs = fp(s) / s * slash;
  CHECK((lhs - rhs).norm() < 1e-6);
  // the direction matrix squares to one: (slash/s)^2 = I
  CHECK((slash * slash / (s * s) - Mat4c::Identity()).norm() < 1e-12);
}
