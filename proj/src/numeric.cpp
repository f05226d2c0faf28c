#include "gmoment/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace gmoment {

Mat4c expm(const Mat4c& a) { return a.exp(); }
Mat4c logm(const Mat4c& a) { return a.log(); }

double pseudo_unitarity_residual(const Mat4c& M, double delta_s) {
  Mat4c g0 = to_numeric(GammaRep::dirac().gamma_upper[0]);
  Mat4c U = expm(std::complex<double>(0, 1) * delta_s * M);
  Mat4c resid = g0 * U.adjoint() * g0 * U - Mat4c::Identity();
  return resid.norm();
}

Mat4c coupling_matrix(double e_charge, const std::array<double, 4>& A_lower) {
  const GammaRep& rep = GammaRep::dirac();
  Mat4c M = Mat4c::Zero();
  for (int mu = 0; mu < 4; ++mu) M -= e_charge * A_lower[mu] * to_numeric(rep.gamma_upper[mu]);
  return M;
}

int kernel_dimension(const Mat4c& a, double tol) {
  Eigen::JacobiSVD<Mat4c> svd(a);
  int dim = 0;
  for (int i = 0; i < 4; ++i)
    if (svd.singularValues()(i) < tol) ++dim;
  return dim;
}

QuantizationReport quantization_kernel_check(const Mat4c& Z, double tol) {
  Eigen::ComplexEigenSolver<Mat4c> es(Z);
  if (es.info() != Eigen::Success) throw Error("quantization check: eigensolver failed");
  Eigen::JacobiSVD<Mat4c> svd(es.eigenvectors());
  double cond = svd.singularValues()(0) / svd.singularValues()(3);
  if (!(cond < 1e8))
    throw Error("quantization check: eigenvector matrix is ill-conditioned; "
                "perturb the input matrix and retry");
  QuantizationReport out;
  constexpr double two_pi = 6.283185307179586476925;
  for (int i = 0; i < 4; ++i) {
    std::complex<double> lam = es.eigenvalues()(i);
    bool flag = std::abs(std::exp(lam) - 1.0) <= tol;
    long n = std::lround(-lam.imag() / two_pi);
    out.entries.push_back({lam, flag, flag ? n : 0});
    if (flag) ++out.flagged;
  }
  out.kernel_dim = kernel_dimension(expm(Z) - Mat4c::Identity(), 10 * tol);
  return out;
}

}  // namespace gmoment
