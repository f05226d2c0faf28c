#pragma once

// Exact 4x4 Dirac-basis representation of the gamma matrices and the derived
// beta / alpha / sigma operators, all over GaussianRational entries. The
// standard Dirac basis is fixed so that beta is diagonal and even/odd grading
// is a block structure.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gmoment/scalar.hpp"

namespace Eigen {
template <>
struct NumTraits<gmoment::GaussianRational> {
  using Self = gmoment::GaussianRational;
  using Real = Self;
  using NonInteger = Self;
  using Literal = Self;
  using Nested = Self;
  // IsComplex stays 0: Eigen's conjugation helpers are never used on this
  // type (dagger() conjugates explicitly), and advertising a complex scalar
  // with Real == Self trips the ScalarBinaryOpTraits specializations.
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32
  };
  static Self epsilon() { return Self(); }
  static Self dummy_precision() { return Self(); }
  static int digits10() { return 0; }
};
}  // namespace Eigen

namespace gmoment {

using Mat4 = Eigen::Matrix<GaussianRational, 4, 4>;
using Mat4c = Eigen::Matrix4cd;

Mat4 mat4_zero();
Mat4 mat4_identity();
// conjugate transpose, done entrywise (custom scalar)
Mat4 dagger(const Mat4& a);
bool is_hermitian(const Mat4& a);
Mat4c to_numeric(const Mat4& a);

// diag(+1,-1,-1,-1)
struct MinkowskiMetric {
  std::array<int, 4> diag{1, -1, -1, -1};
  int operator()(int mu, int nu) const { return mu == nu ? diag[mu] : 0; }
};

struct GammaRep {
  std::array<Mat4, 4> gamma_lower;
  std::array<Mat4, 4> gamma_upper;
  Mat4 beta;
  std::array<Mat4, 3> alpha;   // alpha_k = gamma^0 gamma^k
  std::array<Mat4, 3> sigma;   // 4x4 Dirac spin matrix, diag(pauli_k, pauli_k)
  Mat4 sigma_munu[4][4];       // (i/2)[gamma^mu, gamma^nu]
  MinkowskiMetric metric;

  // Standard Dirac basis; throws Error if any construction self-check fails.
  static const GammaRep& dirac();
};

// builds the Dirac representation and verifies its invariants
GammaRep build_dirac_rep();

struct AnticommutatorCheck {
  int mu, nu;
  bool pass;
};

// all 16 (mu,nu) pairs of Eq.-207-type identities for an arbitrary candidate rep
std::vector<AnticommutatorCheck> check_anticommutators(const std::array<Mat4, 4>& gamma_upper,
                                                       const MinkowskiMetric& g = {});

// rho = psi^dagger gamma^0 psi for a numeric spinor
double density(const GammaRep& rep, const Eigen::Vector4cd& psi);

// exact matrix form of (alpha.a)(alpha.b) - a.b - i sigma.(a x b); must be zero
Mat4 alpha_dot_identity_residual(const GammaRep& rep,
                                 const std::array<GaussianRational, 3>& a,
                                 const std::array<GaussianRational, 3>& b);

}  // namespace gmoment
