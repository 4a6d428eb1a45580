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

#include "qdec/linalg.hpp"

#include <cmath>
#include <sstream>

#include "qdec/errors.hpp"

namespace qdec::linalg {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEigen eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

Matrix sqrt_psd(const Matrix& m, double tol) {
  const auto e = eigh(m);
  if (e.values.size() > 0 && e.values(0) < -tol) {
    std::ostringstream msg;
    msg << "matrix is not positive semidefinite (min eigenvalue " << e.values(0) << ")";
    throw DomainError(msg.str());
  }
  return spectral_apply(e, [](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; });
}

Matrix pow_psd_pinv(const Matrix& m, double p, double cutoff) {
  const auto e = eigh(m);
  return spectral_apply(e, [&](double v) { return v > cutoff ? std::pow(v, p) : 0.0; });
}

RealVector singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double hermitian_distance(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qdec::linalg
