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

#include "qdec/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdec/montecarlo.hpp"

namespace qdec::circuits {

// ---------------------------------------------------------------------------
// gate sets

GateSet GateSet::haar_u4() { return GateSet(Kind::HaarU4); }

GateSet GateSet::from_ensemble(designs::UnitaryEnsemble e) {
  if (e.dim() != 4) throw LayoutError("gate-set unitaries must be 4 x 4");
  if (e.is_haar()) return haar_u4();
  GateSet g(Kind::Ensemble);
  g.ensemble_ = std::move(e);
  return g;
}

std::string GateSet::name() const {
  switch (kind_) {
    case Kind::HaarU4:
      return "haar_u4";
    case Kind::Ensemble:
      break;
  }
  return "ensemble";
}

Matrix GateSet::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::HaarU4:
      return random::haar_unitary(4, rng);
    case Kind::Ensemble:
      break;
  }
  const auto& p = ensemble_->probs();
  std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
  return ensemble_->unitaries()[pick(rng)];
}

void CircuitModel::validate() const {
  if (n_qubits < 2) throw ParameterError("circuits need at least two qubits");
  if (t < 0) throw ParameterError("circuit depth must be nonnegative");
  if (n_qubits > kMaxSampleQubits) {
    std::ostringstream msg;
    msg << "circuit on " << n_qubits << " qubits exceeds the limit of " << kMaxSampleQubits;
    throw SizeError(msg.str());
  }
}

// ---------------------------------------------------------------------------
// gates

std::vector<std::pair<int, int>> qubit_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

Matrix cnot() {
  Matrix c = Matrix::Zero(4, 4);
  c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1.0;
  return c;
}

Matrix t_gate() {
  Matrix t = Matrix::Identity(2, 2);
  t(1, 1) = std::polar(1.0, std::acos(-1.0) / 4.0);
  return t;
}

designs::UnitaryEnsemble ht_cnot_gates() {
  const Matrix h = designs::hadamard();
  const Matrix t = t_gate();
  const std::vector<Matrix> local{h, t, h * t};
  std::vector<Matrix> gates;
  for (const auto& a : local)
    for (const auto& b : local) gates.push_back(cnot() * linalg::kron(a, b));
  return designs::UnitaryEnsemble::uniform(std::move(gates));
}

void apply_gate(Matrix& w, const Matrix& gate, int i, int j, int n) {
  if (gate.rows() != 4 || gate.cols() != 4) throw LayoutError("two-qubit gate must be 4 x 4");
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw LayoutError("invalid qubit pair");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (w.rows() != dim) throw LayoutError("matrix does not act on n qubits");
  const Eigen::Index bi = Eigen::Index{1} << (n - 1 - i);
  const Eigen::Index bj = Eigen::Index{1} << (n - 1 - j);
  Complex a[4];
  for (Eigen::Index base = 0; base < dim; ++base) {
    if ((base & bi) || (base & bj)) continue;
    const Eigen::Index idx[4] = {base, base | bj, base | bi, base | bi | bj};
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (int k = 0; k < 4; ++k) a[k] = w(idx[k], c);
      for (int r = 0; r < 4; ++r) {
        Complex s = 0.0;
        for (int k = 0; k < 4; ++k) s += gate(r, k) * a[k];
        w(idx[r], c) = s;
      }
    }
  }
}

Matrix embed_gate(const Matrix& gate, int i, int j, int n) {
  Matrix w = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  apply_gate(w, gate, i, j, n);
  return w;
}

namespace {

SystemLayout qubit_layout(int n) {
  std::vector<SystemLayout::Factor> f;
  for (int q = 0; q < n; ++q) f.push_back({"q" + std::to_string(q), 2});
  return SystemLayout(std::move(f));
}

Matrix sample_matrix(const CircuitModel& m, Rng& rng) {
  const auto pairs = qubit_pairs(m.n_qubits);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  Matrix w = Matrix::Identity(Eigen::Index{1} << m.n_qubits, Eigen::Index{1} << m.n_qubits);
  for (int s = 0; s < m.t; ++s) {
    const auto [i, j] = pairs[pick(rng)];
    apply_gate(w, m.gate_set.sample(rng), i, j, m.n_qubits);
  }
  return w;
}

// Orthonormal real bases of the symmetric and antisymmetric subspaces of
// C^D x C^D.
struct SymBasis {
  Matrix sym;
  Matrix anti;
};

SymBasis sym_basis(int dim) {
  const int ds = dim * (dim + 1) / 2;
  const int da = dim * (dim - 1) / 2;
  SymBasis b{Matrix::Zero(dim * dim, ds), Matrix::Zero(dim * dim, da)};
  const double r = 1.0 / std::sqrt(2.0);
  int ks = 0;
  int ka = 0;
  for (int x = 0; x < dim; ++x) {
    b.sym(x * dim + x, ks++) = 1.0;
    for (int y = x + 1; y < dim; ++y) {
      b.sym(x * dim + y, ks) = r;
      b.sym(y * dim + x, ks++) = r;
      b.anti(x * dim + y, ka) = r;
      b.anti(y * dim + x, ka++) = -r;
    }
  }
  return b;
}

// Choi vector of the conjugation by W x W in reduced coordinates. W x W
// preserves both subspaces, so the vector lives on Sym x Sym (+) Anti x Anti.
Vector reduced_vector(const Matrix& w, const SymBasis& b) {
  const Matrix v = linalg::kron(w, w);
  const Matrix vs = b.sym.transpose() * v * b.sym;
  const Matrix va = b.anti.transpose() * v * b.anti;
  Vector out(vs.size() + va.size());
  out << Eigen::Map<const Vector>(vs.data(), vs.size()), Eigen::Map<const Vector>(va.data(), va.size());
  return out / static_cast<double>(w.rows());
}

// Haar twirl Choi in the same coordinates: Schur orthogonality on the two
// irreducible blocks gives I / (D^2 D_s) (+) I / (D^2 D_a).
RealVector haar_diagonal(int dim) {
  const long long ds = dim * (dim + 1) / 2;
  const long long da = dim * (dim - 1) / 2;
  RealVector d(ds * ds + da * da);
  const double d2 = static_cast<double>(dim) * dim;
  d.head(ds * ds).setConstant(1.0 / (d2 * static_cast<double>(ds)));
  d.tail(da * da).setConstant(1.0 / (d2 * static_cast<double>(da)));
  return d;
}

double proxy_from_gram(const Matrix& gram, double count, const RealVector& haar) {
  Matrix diff = gram / count;
  diff.diagonal() -= haar.cast<Complex>();
  return linalg::eigvalsh(diff).cwiseAbs().sum();
}

void check_sweep_size(int n) {
  if (n > kMaxSweepQubits) {
    std::ostringstream msg;
    msg << "twirl proxy on " << n << " qubits exceeds the limit of " << kMaxSweepQubits
        << " (reduced Choi dimension grows as 2^(4n) / 2)";
    throw SizeError(msg.str());
  }
}

}  // namespace

Operator sample_circuit_unitary(const CircuitModel& m, Rng& rng) {
  m.validate();
  return {qubit_layout(m.n_qubits), sample_matrix(m, rng)};
}

double design_proxy(const std::vector<Matrix>& samples) {
  if (samples.empty()) throw ParameterError("design proxy needs at least one sample");
  const int dim = static_cast<int>(samples.front().rows());
  int n = 0;
  while ((1 << n) < dim) ++n;
  check_sweep_size(n);
  const SymBasis b = sym_basis(dim);
  const RealVector haar = haar_diagonal(dim);
  Matrix r(haar.size(), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) r.col(static_cast<Eigen::Index>(k)) = reduced_vector(samples[k], b);
  return proxy_from_gram(r * r.adjoint(), static_cast<double>(samples.size()), haar);
}

std::vector<SweepRow> circuit_design_sweep(int n_qubits, const GateSet& gates, std::vector<int> t_values,
                                           long long n_samples, std::uint64_t seed, int batches) {
  CircuitModel base{n_qubits, gates, 0};
  base.validate();
  check_sweep_size(n_qubits);
  if (n_samples < 2) throw ParameterError("sweep needs at least two samples per depth");
  if (batches < 2) throw ParameterError("jackknife needs at least two batches");
  batches = static_cast<int>(std::min<long long>(batches, n_samples));
  std::sort(t_values.begin(), t_values.end());
  for (int t : t_values)
    if (t < 0) throw ParameterError("circuit depth must be nonnegative");

  const int dim = 1 << n_qubits;
  const SymBasis b = sym_basis(dim);
  const RealVector haar = haar_diagonal(dim);
  std::vector<SweepRow> rows;
  for (int t : t_values) {
    CircuitModel m = base;
    m.t = t;
    const auto vecs = run_trials<Vector>(n_samples, seed, [&](Rng&, long long k) {
      Rng rng = make_stream(seed, (static_cast<std::uint64_t>(t) << 32) | static_cast<std::uint64_t>(k));
      return reduced_vector(sample_matrix(m, rng), b);
    });
    Matrix r(haar.size(), static_cast<Eigen::Index>(n_samples));
    for (long long k = 0; k < n_samples; ++k) r.col(static_cast<Eigen::Index>(k)) = vecs[static_cast<std::size_t>(k)];

    std::vector<Matrix> grams;
    Matrix total = Matrix::Zero(r.rows(), r.rows());
    std::vector<long long> sizes;
    for (int bi = 0; bi < batches; ++bi) {
      const long long lo = n_samples * bi / batches;
      const long long hi = n_samples * (bi + 1) / batches;
      const auto blk = r.middleCols(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi - lo));
      grams.push_back(blk * blk.adjoint());
      total += grams.back();
      sizes.push_back(hi - lo);
    }
    SweepRow row;
    row.t = t;
    row.n_samples = n_samples;
    row.seed = seed;
    row.delta_estimate = proxy_from_gram(total, static_cast<double>(n_samples), haar);
    std::vector<double> loo;
    for (int bi = 0; bi < batches; ++bi)
      loo.push_back(proxy_from_gram(total - grams[static_cast<std::size_t>(bi)],
                                    static_cast<double>(n_samples - sizes[static_cast<std::size_t>(bi)]), haar));
    double mean = 0.0;
    for (double x : loo) mean += x;
    mean /= batches;
    double ss = 0.0;
    for (double x : loo) ss += (x - mean) * (x - mean);
    row.stderr_estimate = std::sqrt(ss * (batches - 1) / batches);
    rows.push_back(row);
  }
  return rows;
}

DepthFit fit_depth_constant(int n_qubits, const std::vector<SweepRow>& rows) {
  DepthFit fit;
  const double n = n_qubits;
  double sxt = 0.0;
  double sxx = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : rows) {
    if (!(r.delta_estimate > 0.0 && r.delta_estimate < 1.0)) continue;
    const double x = n * n + n * std::log2(1.0 / r.delta_estimate);
    pts.emplace_back(x, r.t);
    sxt += x * r.t;
    sxx += x * x;
  }
  fit.points = static_cast<int>(pts.size());
  if (pts.empty()) return fit;
  fit.c = sxt / sxx;
  double res = 0.0;
  for (const auto& [x, t] : pts) res += (t - fit.c * x) * (t - fit.c * x);
  fit.residual = std::sqrt(res / static_cast<double>(pts.size()));
  return fit;
}

}  // namespace qdec::circuits
