#include <doctest.h>

#include <random>

#include "gmoment/op_expr.hpp"
#include "gmoment/serialize.hpp"

using namespace gmoment;

namespace {

OpExpr rat(long n, long d = 1) { return OpExpr::scalar(ScalarCoeff::rational(n, d)); }

// random word of covariant atoms (matrices, derivatives, fields); the
// covariant layer has no rewrite rules, so arbitrary depth is safe
OpExpr random_cov_word(std::mt19937& rng, int len) {
  std::uniform_int_distribution<int> kind(0, 2), idx(0, 3), num(-3, 3);
  OpExpr w = OpExpr::scalar(ScalarCoeff::rational(num(rng) == 0 ? 1 : num(rng)));
  for (int i = 0; i < len; ++i) {
    switch (kind(rng)) {
      case 0: w = mul(w, OpExpr::gamma_upper(idx(rng)), RuleSet::covariant()); break;
      case 1: w = mul(w, OpExpr::deriv(idx(rng)), RuleSet::covariant()); break;
      default: w = mul(w, OpExpr::cov_A(idx(rng)), RuleSet::covariant()); break;
    }
  }
  return w;
}

}  // namespace

TEST_CASE("clifford basis table matches concrete matrices") {
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) {
      auto [sign, c] = CliffordBasis::mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
      Mat4 lhs = CliffordBasis::matrix(static_cast<std::uint8_t>(a)) *
                 CliffordBasis::matrix(static_cast<std::uint8_t>(b));
      Mat4 rhs = CliffordBasis::matrix(c) * GaussianRational(Rational(sign));
      CHECK(lhs == rhs);
    }
}

TEST_CASE("named matrices match the representation") {
  const GammaRep& rep = GammaRep::dirac();
  for (int k = 1; k <= 3; ++k) {
    CHECK(to_matrix(OpExpr::alpha(k)) == rep.alpha[k - 1]);
    CHECK(to_matrix(OpExpr::sigma(k)) == rep.sigma[k - 1]);
  }
  CHECK(to_matrix(OpExpr::beta()) == rep.gamma_upper[0]);
}

TEST_CASE("normalize spec examples") {
  // g1 g0 -> -g0 g1
  OpExpr lhs = OpExpr::gamma_upper(1) * OpExpr::gamma_upper(0);
  OpExpr rhs = -(OpExpr::gamma_upper(0) * OpExpr::gamma_upper(1));
  CHECK(lhs == rhs);
  // g0 g0 -> I
  CHECK(OpExpr::gamma_upper(0) * OpExpr::gamma_upper(0) == rat(1));
  // product rule: d_mu (A_nu .) = (d_mu A_nu) + A_nu d_mu
  OpExpr prod = mul(OpExpr::deriv(1), OpExpr::cov_A(2), RuleSet::covariant());
  FieldAtom derived;
  derived.kind = FieldAtom::Kind::CovA;
  derived.i1 = 2;
  derived.derivs = {1};
  OpExpr want = OpExpr::field(derived) +
                mul(OpExpr::cov_A(2), OpExpr::deriv(1), RuleSet::covariant());
  CHECK(prod == want);
}

TEST_CASE("commutator spec examples") {
  OpExpr X = random_cov_word(*new std::mt19937(3), 3);
  CHECK(commutator(X, X, RuleSet::covariant()).is_zero());

  // [d1, A_1] = (d1 A_1)
  FieldAtom derived;
  derived.kind = FieldAtom::Kind::CovA;
  derived.i1 = 1;
  derived.derivs = {1};
  CHECK(commutator(OpExpr::deriv(1), OpExpr::cov_A(1), RuleSet::covariant()) ==
        OpExpr::field(derived));
}

TEST_CASE("jacobi identity on random covariant words") {
  std::mt19937 rng(99);
  for (int it = 0; it < 25; ++it) {
    OpExpr a = random_cov_word(rng, 2);
    OpExpr b = random_cov_word(rng, 3);
    OpExpr c = random_cov_word(rng, 2);
    RuleSet rules = RuleSet::covariant();
    OpExpr jac = commutator(commutator(a, b, rules), c, rules) +
                 commutator(commutator(b, c, rules), a, rules) +
                 commutator(commutator(c, a, rules), b, rules);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("commutator and product are bilinear") {
  std::mt19937 rng(17);
  RuleSet rules = RuleSet::covariant();
  for (int it = 0; it < 10; ++it) {
    OpExpr a = random_cov_word(rng, 2), b = random_cov_word(rng, 2), c = random_cov_word(rng, 2);
    ScalarCoeff s = ScalarCoeff::rational(3, 7);
    CHECK(commutator(a * s + b, c, rules) ==
          commutator(a, c, rules) * s + commutator(b, c, rules));
  }
}

TEST_CASE("normalize is idempotent") {
  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    OpExpr a = random_cov_word(rng, 3);
    CHECK(normalize(a, RuleSet::covariant()) == a);
    CHECK(normalize(normalize(a)) == normalize(a));
  }
}

TEST_CASE("representation faithfulness: symbolic matrix algebra vs concrete") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> idx(0, 3), num(-5, 5), den(1, 4);
  for (int it = 0; it < 30; ++it) {
    // random polynomial in gamma matrices with rational coefficients
    OpExpr sym = OpExpr::zero();
    Mat4 conc = mat4_zero();
    for (int t = 0; t < 4; ++t) {
      GaussianRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
      int mu = idx(rng), nu = idx(rng);
      sym += OpExpr::gamma_upper(mu) * OpExpr::gamma_upper(nu) * ScalarCoeff(c);
      conc = conc + CliffordBasis::matrix(static_cast<std::uint8_t>(1u << mu)) *
                        CliffordBasis::matrix(static_cast<std::uint8_t>(1u << nu)) * c;
    }
    CHECK(to_matrix(sym) == conc);
  }
}

TEST_CASE("grade filter") {
  OpExpr e = OpExpr::gamma_upper(0) * ScalarCoeff::sym(sym::ds) +
             OpExpr::gamma_upper(1) * ScalarCoeff::sym(sym::ds, 2) +
             OpExpr::cov_A(0) * ScalarCoeff::sym(sym::ds, 2);
  CHECK(e.grade_filter(sym::ds, 1) == OpExpr::gamma_upper(0) * ScalarCoeff::sym(sym::ds));
  CHECK(e.grade_filter(sym::ds, -1).is_zero());
  CHECK(e.grade_filter(sym::ds, 2) + e.grade_filter(sym::ds, 1) == e);
}

TEST_CASE("3+1 canonicalization: A-gradient splits into Sym and B") {
  // d_2 Av_1 = Sym12 - (1/2) B3 + Av_1 d_2
  OpExpr got = OpExpr::deriv(2) * OpExpr::a_vec(1);
  FieldAtom s;
  s.kind = FieldAtom::Kind::SymA;
  s.i1 = 1;
  s.i2 = 2;
  OpExpr want = OpExpr::field(s) + OpExpr::b_vec(3) * ScalarCoeff::rational(-1, 2) +
                OpExpr::a_vec(1) * OpExpr::deriv(2);
  CHECK(got == want);

  // curl recovers B exactly: (p x A + A x p) = -i (nabla x A) = -i B
  OpVec3 p = vec_of([](int k) { return OpExpr::deriv(k, -ScalarCoeff::i()); });
  OpVec3 A = vec_of([](int k) { return OpExpr::a_vec(k); });
  OpVec3 curl = cross3(p, A);
  OpVec3 curl2 = cross3(A, p);
  for (int k = 1; k <= 3; ++k) {
    OpExpr sum = curl[k - 1] + curl2[k - 1];
    CHECK(sum == OpExpr::b_vec(k) * (-ScalarCoeff::i()));
  }
}

TEST_CASE("3+1 canonicalization is construction-order independent") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> di(1, 3), base(0, 2);
  for (int it = 0; it < 60; ++it) {
    OpExpr f = base(rng) == 0 ? OpExpr::a_vec(di(rng))
               : base(rng) == 1 ? OpExpr::e_vec(di(rng))
                                : OpExpr::phi();
    int d1 = di(rng), d2 = di(rng);
    RuleSet r;
    r.curl_free_e = true;
    OpExpr left = mul(OpExpr::deriv(d1), mul(OpExpr::deriv(d2), f, r), r);
    OpExpr right = mul(mul(OpExpr::deriv(d1), OpExpr::deriv(d2), r), f, r);
    CHECK(left == right);
    // and against the opposite application order
    OpExpr swapped = mul(OpExpr::deriv(d2), mul(OpExpr::deriv(d1), f, r), r);
    CHECK(left == swapped);
  }
}

TEST_CASE("static rule kills time derivatives of fields") {
  RuleSet r;
  r.static_fields = true;
  OpExpr got = mul(OpExpr::deriv(0), OpExpr::phi(), r);
  CHECK(got == mul(OpExpr::phi(), OpExpr::deriv(0), r));  // only the pass-through survives
}

TEST_CASE("serialization round-trips") {
  std::mt19937 rng(77);
  for (int it = 0; it < 20; ++it) {
    OpExpr a = random_cov_word(rng, 3);
    CHECK(parse_expr(print_expr(a)) == a);
  }
  // 3+1 and structural atoms
  OpExpr b = sigma_dot(vec_of([](int k) { return OpExpr::b_vec(k); })) * ScalarCoeff::sym(sym::kappa) +
             OpExpr::cross_comp(VecId::A, VecId::E, 2) * ScalarCoeff::rational(-3, 4) +
             OpExpr::vec_comp(VecId::R, 1) * ScalarCoeff::i() +
             mul(alpha_dot(vec_of([](int k) { return OpExpr::e_vec(k); })), OpExpr::deriv(0),
                 RuleSet::base()) +
             OpExpr::phi() * ScalarCoeff::sym(sym::e);
  CHECK(parse_expr(print_expr(b)) == b);
  CHECK(print_expr(parse_expr(print_expr(b))) == print_expr(b));
  // matrix aliases parse to the same canonical form
  CHECK(parse_expr("1 * beta * alpha2") == OpExpr::beta() * OpExpr::alpha(2));
  CHECK(parse_expr("i * g2g3") == OpExpr::sigma(1));
}

TEST_CASE("even/odd mask classification") {
  CHECK(Word{.mask = 0b0001}.is_even());   // beta
  CHECK(!Word{.mask = 0b0011}.is_even());  // alpha1
  CHECK(Word{.mask = 0b0110}.is_even());   // sigma3 carrier
  CHECK(!Word{.mask = 0b0010}.is_even());  // gamma^1
}
