// Copyright 2026 The qdec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Thin helpers over Eigen for Hermitian spectral calculus.

#ifndef QDEC_LINALG_HPP
#define QDEC_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace qdec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance for Hermiticity and positivity checks.
inline constexpr double kDefaultTol = 1e-9;

/// Eigenvalues above -kClipTol are treated as zero when taking matrix roots.
inline constexpr double kClipTol = 1e-12;

namespace linalg {

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

Matrix hermitian_part(const Matrix& m);

/// Eigendecomposition through the dedicated self-adjoint solver. The input is
/// symmetrized first.
HermitianEigen eigh(const Matrix& m);

RealVector eigvalsh(const Matrix& m);

/// f applied to the spectrum of a Hermitian matrix.
template <class F>
Matrix spectral_apply(const HermitianEigen& e, F&& f) {
  RealVector fv(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

/// Square root of a PSD matrix. Eigenvalues in [-clip, 0) are set to zero;
/// more negative ones raise DomainError when `tol` is exceeded.
Matrix sqrt_psd(const Matrix& m, double tol = kDefaultTol);

/// m^p restricted to the support (eigenvalues > cutoff); zero elsewhere.
Matrix pow_psd_pinv(const Matrix& m, double p, double cutoff);

RealVector singular_values(const Matrix& m);

double hermitian_distance(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace linalg
}  // namespace qdec

#endif  // QDEC_LINALG_HPP
