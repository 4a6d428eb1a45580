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

#include "qdec/random.hpp"

#include <cmath>

namespace qdec {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace random {

Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) g(r, c) = Complex(n(rng), n(rng));
  return g;
}

Matrix haar_unitary(int d, Rng& rng) {
  if (d < 1) throw ParameterError("unitary dimension must be positive");
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    const Complex phase = a > 0.0 ? r(i, i) / a : Complex(1.0);
    q.col(i) *= phase;
  }
  return q;
}

Matrix hermitian(int d, Rng& rng) { return linalg::hermitian_part(ginibre(d, d, rng)); }

Operator density(const SystemLayout& layout, Rng& rng, int rank) {
  const int d = layout.total_dim();
  const Matrix g = ginibre(d, rank > 0 ? rank : d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {layout, linalg::hermitian_part(rho)};
}

Operator subnormalized_density(const SystemLayout& layout, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t = 1.0 - u(rng);
  return density(layout, rng) * t;
}

Channel cptp_channel(const SystemLayout& in, const SystemLayout& out, Rng& rng) {
  const SystemLayout choi_layout = out.concat(in.with_suffix(kChoiSuffix));
  const int d = choi_layout.total_dim();
  const Matrix g = ginibre(d, d, rng);
  const Operator j{choi_layout, g * g.adjoint()};
  // Rescale by (I x S^{-1/2}) with S = d_in tr_out J so that tr_out = I/d_in.
  const Operator s = qmath::partial_trace(j, out.labels());
  const Matrix s_inv = linalg::pow_psd_pinv(s.matrix() * static_cast<double>(in.total_dim()), -0.5, 1e-14);
  const Matrix k = linalg::kron(Matrix::Identity(out.total_dim(), out.total_dim()), s_inv);
  return {in, out, Operator(choi_layout, linalg::hermitian_part(k * j.matrix() * k))};
}

Channel hermitian_map(const SystemLayout& in, const SystemLayout& out, Rng& rng) {
  const SystemLayout choi_layout = out.concat(in.with_suffix(kChoiSuffix));
  return {in, out, Operator(choi_layout, hermitian(choi_layout.total_dim(), rng))};
}

}  // namespace random
}  // namespace qdec
