#pragma once

// Numeric oracle layer: complex 4x4 matrices, matrix exponentials and
// logarithms, the pseudo-unitarity residual, and the spectral form of the
// quantization condition. Everything here is double precision on purpose;
// the exact engine is cross-checked against these routines, never built on
// top of them.

#include <complex>
#include <vector>

#include "gmoment/gamma.hpp"

namespace gmoment {

Mat4c expm(const Mat4c& a);
Mat4c logm(const Mat4c& a);

// || gamma^0 U^dagger gamma^0 U - I ||_F for U = exp(i ds M)
double pseudo_unitarity_residual(const Mat4c& M, double delta_s);

// numeric M = -e gamma^mu A_mu for given potentials
Mat4c coupling_matrix(double e_charge, const std::array<double, 4>& A_lower);

struct QuantizationEntry {
  std::complex<double> eigenvalue;
  bool satisfies_2npi;  // exp(lambda) == 1 within tolerance
  long n;               // i*lambda / (2 pi), rounded (valid when flagged)
};

struct QuantizationReport {
  std::vector<QuantizationEntry> entries;
  int flagged = 0;
  int kernel_dim = 0;  // dim ker(exp(Z) - I), computed by SVD
};

// Spectral check of (iZ - 2 n pi) psi = 0 content: an eigenvalue lambda of Z
// contributes iff exp(lambda) = 1, i.e. i*lambda in 2 pi Z. Throws if the
// eigenvector matrix is ill-conditioned (cond > 1e8).
QuantizationReport quantization_kernel_check(const Mat4c& Z, double tol = 1e-8);

int kernel_dimension(const Mat4c& a, double tol);

}  // namespace gmoment
