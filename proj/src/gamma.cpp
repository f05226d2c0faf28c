#include "gmoment/gamma.hpp"

namespace gmoment {

namespace {
const GaussianRational Z{Rational(0)};
const GaussianRational ONE{Rational(1)};
const GaussianRational MINUS{Rational(-1)};
const GaussianRational IM = GaussianRational::i();

Mat4 from_rows(std::initializer_list<GaussianRational> v) {
  Mat4 out;
  auto it = v.begin();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = *it++;
  return out;
}
}  // namespace

Mat4 mat4_zero() {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = Z;
  return out;
}

Mat4 mat4_identity() {
  Mat4 out = mat4_zero();
  for (int i = 0; i < 4; ++i) out(i, i) = ONE;
  return out;
}

Mat4 dagger(const Mat4& a) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = a(j, i).conj();
  return out;
}

bool is_hermitian(const Mat4& a) {
  return dagger(a) == a;
}

Mat4c to_numeric(const Mat4& a) {
  Mat4c out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = a(i, j).to_complex();
  return out;
}

GammaRep build_dirac_rep() {
  GammaRep rep;
  rep.beta = from_rows({ONE, Z, Z, Z,
                        Z, ONE, Z, Z,
                        Z, Z, MINUS, Z,
                        Z, Z, Z, MINUS});
  // gamma^k from the 2x2 Pauli blocks: [[0, s_k], [-s_k, 0]]
  Mat4 g1 = from_rows({Z, Z, Z, ONE,
                       Z, Z, ONE, Z,
                       Z, MINUS, Z, Z,
                       MINUS, Z, Z, Z});
  Mat4 g2 = from_rows({Z, Z, Z, -IM,
                       Z, Z, IM, Z,
                       Z, IM, Z, Z,
                       -IM, Z, Z, Z});
  Mat4 g3 = from_rows({Z, Z, ONE, Z,
                       Z, Z, Z, MINUS,
                       MINUS, Z, Z, Z,
                       Z, ONE, Z, Z});
  rep.gamma_upper = {rep.beta, g1, g2, g3};
  for (int mu = 0; mu < 4; ++mu)
    rep.gamma_lower[mu] = rep.gamma_upper[mu] * GaussianRational(Rational(rep.metric.diag[mu]));

  for (int k = 0; k < 3; ++k) rep.alpha[k] = rep.gamma_upper[0] * rep.gamma_upper[k + 1];
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Mat4 c = rep.gamma_upper[mu] * rep.gamma_upper[nu] - rep.gamma_upper[nu] * rep.gamma_upper[mu];
      rep.sigma_munu[mu][nu] = c * (IM * GaussianRational(1, 2));
    }
  // sigma_k = sigma^{ij} for cyclic (i,j,k)
  rep.sigma[0] = rep.sigma_munu[2][3];
  rep.sigma[1] = rep.sigma_munu[3][1];
  rep.sigma[2] = rep.sigma_munu[1][2];

  // construction self-checks
  const Mat4 id = mat4_identity();
  for (auto& c : check_anticommutators(rep.gamma_upper, rep.metric))
    if (!c.pass) throw Error("GammaRep self-check: anticommutator failed");
  for (int mu = 0; mu < 4; ++mu) {
    if (!(rep.gamma_upper[0] * dagger(rep.gamma_upper[mu]) * rep.gamma_upper[0] == rep.gamma_upper[mu]))
      throw Error("GammaRep self-check: hermiticity sandwich failed");
  }
  if (!(rep.beta * rep.beta == id)) throw Error("GammaRep self-check: beta^2 != I");
  // sigma_k is diag(pauli_k, pauli_k): verify against alpha * beta products
  for (int k = 0; k < 3; ++k) {
    int i = (k + 1) % 3, j = (k + 2) % 3;
    if (!(rep.sigma[k] == rep.sigma_munu[i + 1][j + 1]))
      throw Error("GammaRep self-check: sigma naming inconsistent");
    if (!(rep.sigma[k] * rep.beta == rep.beta * rep.sigma[k]))
      throw Error("GammaRep self-check: sigma must commute with beta");
  }
  return rep;
}

const GammaRep& GammaRep::dirac() {
  static const GammaRep rep = build_dirac_rep();
  return rep;
}

std::vector<AnticommutatorCheck> check_anticommutators(const std::array<Mat4, 4>& gamma_upper,
                                                       const MinkowskiMetric& g) {
  std::vector<AnticommutatorCheck> out;
  // upper-index relation: {gamma^mu, gamma^nu} = 2 g^{mu nu} I, with
  // g^{mu nu} numerically equal to g_{mu nu}
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Mat4 anti = gamma_upper[mu] * gamma_upper[nu] + gamma_upper[nu] * gamma_upper[mu];
      Mat4 want = mat4_identity() * GaussianRational(Rational(2 * g(mu, nu)));
      out.push_back({mu, nu, anti == want});
    }
  return out;
}

double density(const GammaRep& rep, const Eigen::Vector4cd& psi) {
  Mat4c g0 = to_numeric(rep.gamma_upper[0]);
  std::complex<double> rho = psi.adjoint() * g0 * psi;
  return rho.real();
}

Mat4 alpha_dot_identity_residual(const GammaRep& rep,
                                 const std::array<GaussianRational, 3>& a,
                                 const std::array<GaussianRational, 3>& b) {
  Mat4 lhs = mat4_zero(), rhs = mat4_zero();
  Mat4 adot = mat4_zero(), bdot = mat4_zero();
  for (int k = 0; k < 3; ++k) {
    adot = adot + rep.alpha[k] * a[k];
    bdot = bdot + rep.alpha[k] * b[k];
  }
  lhs = adot * bdot;
  GaussianRational ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  rhs = mat4_identity() * ab;
  std::array<GaussianRational, 3> cross = {a[1] * b[2] - a[2] * b[1],
                                           a[2] * b[0] - a[0] * b[2],
                                           a[0] * b[1] - a[1] * b[0]};
  for (int k = 0; k < 3; ++k) rhs = rhs + rep.sigma[k] * (GaussianRational::i() * cross[k]);
  return lhs - rhs;
}

}  // namespace gmoment
