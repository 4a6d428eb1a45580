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

#include "qdec/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdec::entropy {

namespace {

struct Split {
  Operator rho;  // factors reordered to A then B
  SystemLayout a;
  SystemLayout b;
};

Split split_state(const Operator& rho, std::span<const std::string> a_labels) {
  if (a_labels.empty()) throw LayoutError("the conditioned system A must name at least one factor");
  Split s;
  s.a = rho.layout().select(a_labels);
  s.b = rho.layout().without(a_labels);
  std::vector<std::string> order(a_labels.begin(), a_labels.end());
  const auto rest = s.b.labels();
  order.insert(order.end(), rest.begin(), rest.end());
  s.rho = qmath::permute(rho, order);
  return s;
}

void require_subnormalized(const Operator& rho) {
  if (!rho.is_hermitian()) throw DomainError("state is not Hermitian");
  const RealVector ev = linalg::eigvalsh(rho.matrix());
  if (ev(0) < -kDefaultTol) throw DomainError("state has a negative eigenvalue");
  const double tr = rho.real_trace();
  if (tr > 1.0 + kDefaultTol) throw DomainError("state has trace larger than one");
  if (tr <= 1e-14) throw DomainError("min-entropy of the zero state is undefined");
}

// I_A x s for s on B.
Matrix lift(const Matrix& s, int d_a) { return linalg::kron(Matrix::Identity(d_a, d_a), s); }

// Adds Re/Im constraints tying tr_A of a block to the Hermitian matrix `target`.
void add_partial_trace_constraints(sdp::Problem& p, int block, int d_a, int d_b, const Matrix& target) {
  for (int i = 0; i < d_b; ++i) {
    for (int j = i; j < d_b; ++j) {
      int c = p.add_constraint(target(i, j).real());
      for (int a = 0; a < d_a; ++a) p.add_real_part(c, block, a * d_b + i, a * d_b + j);
      if (i != j) {
        c = p.add_constraint(target(i, j).imag());
        for (int a = 0; a < d_a; ++a) p.add_imag_part(c, block, a * d_b + i, a * d_b + j);
      }
    }
  }
}

// Shifts s by a multiple of the identity until I_A x s >= rho; returns s.
Matrix certify_sigma(const Matrix& sigma, const Matrix& rho, int d_a) {
  Matrix s = linalg::hermitian_part(sigma);
  const double lmin = linalg::eigvalsh(lift(s, d_a) - rho).minCoeff();
  if (lmin < 0.0) s += (-lmin) * Matrix::Identity(s.rows(), s.cols());
  return s;
}

EntropyResult min_entropy_split(const Split& sp, const sdp::Options& opts) {
  const int d_a = sp.a.total_dim();
  const int d_b = sp.b.total_dim();
  const Matrix& rho = sp.rho.matrix();
  EntropyResult r;
  r.upper_bound = std::log2(static_cast<double>(d_a));

  if (d_b == 1) {
    const double lmax = linalg::eigvalsh(rho).maxCoeff();
    r.value = -std::log2(lmax);
    r.optimizer_sigma = Operator(sp.b, Matrix::Ones(1, 1));
    return r;
  }

  const int n = d_a * d_b;
  sdp::Problem p({n});
  p.set_objective(0, -rho);
  add_partial_trace_constraints(p, 0, d_a, d_b, Matrix::Identity(d_b, d_b));
  const sdp::Solution s = sdp::solve(p, opts);
  if (s.status == sdp::Status::Infeasible) throw NumericError("min-entropy program reported infeasibility");
  r.sdp_iterations = s.iterations;

  // Z = -rho - A^*(y) = I_A x sigma' - rho, so sigma' = -tr_A(A^*(y)) / d_A.
  const Operator aty{SystemLayout{{"a", d_a}, {"b", d_b}}, p.adjoint(s.y)[0]};
  const Matrix sigma_raw = -qmath::partial_trace(aty, {"a"}).matrix() / static_cast<double>(d_a);
  const Matrix sigma = certify_sigma(sigma_raw, rho, d_a);
  const double tr = sigma.trace().real();
  if (!(tr > 0.0)) throw NumericError("min-entropy certificate has non-positive trace");
  r.value = -std::log2(tr);
  r.optimizer_sigma = Operator(sp.b, sigma / tr);
  const double primal = (rho.adjoint().cwiseProduct(s.X[0].transpose())).sum().real();
  r.certificate_gap = primal > 0.0 ? std::max(0.0, -std::log2(primal) - r.value) : 0.0;
  return r;
}

}  // namespace

EntropyResult min_entropy(const Operator& rho, std::span<const std::string> a_labels, const sdp::Options& opts) {
  require_subnormalized(rho);
  return min_entropy_split(split_state(rho, a_labels), opts);
}

// Smoothing program. With P = rho (+) (1 - tr rho) = V V^* (V restricted to
// the support of P) and Q = rho~ (+) s, the generalized fidelity satisfies
//   F(P, Q) >= c  iff  [[I, Y], [Y^*, Q]] >= 0 with Re tr(V Y) >= c
// for some Y. Off-diagonal entries of Q are left free: pinching Q to its
// block diagonal cannot decrease the fidelity with the block-diagonal P.
// Minimising tr sigma' subject to I x sigma' >= rho~ then gives the smoothing
// state; its min-entropy is recomputed and certified separately.
EntropyResult smooth_min_entropy(const Operator& rho, std::span<const std::string> a_labels, double eps,
                                 const sdp::Options& opts) {
  require_subnormalized(rho);
  const double tr_rho = rho.real_trace();
  if (!(eps >= 0.0) || eps >= std::sqrt(tr_rho)) {
    std::ostringstream msg;
    msg << "smoothing parameter " << eps << " outside [0, sqrt(tr rho)) = [0, " << std::sqrt(tr_rho) << ")";
    throw DomainError(msg.str());
  }
  const Split sp = split_state(rho, a_labels);
  EntropyResult base = min_entropy_split(sp, opts);
  base.smoothing_state = sp.rho;
  if (eps == 0.0) return base;

  const int d_a = sp.a.total_dim();
  const int d_b = sp.b.total_dim();
  const int n = d_a * d_b;
  const Matrix& rm = sp.rho.matrix();

  Matrix p_hat = Matrix::Zero(n + 1, n + 1);
  p_hat.topLeftCorner(n, n) = rm;
  p_hat(n, n) = std::max(0.0, 1.0 - tr_rho);
  const auto e = linalg::eigh(p_hat);
  const double cutoff = 1e-12 * std::max(1.0, e.values.maxCoeff());
  std::vector<int> support;
  for (Eigen::Index i = 0; i < e.values.size(); ++i)
    if (e.values(i) > cutoff) support.push_back(static_cast<int>(i));
  const int r = static_cast<int>(support.size());
  Matrix v(n + 1, r);
  for (int k = 0; k < r; ++k) v.col(k) = e.vectors.col(support[static_cast<std::size_t>(k)]) * std::sqrt(e.values(support[static_cast<std::size_t>(k)]));

  const double eps_eff = std::max(0.0, eps - 1e-7);
  const double c_target = std::sqrt(1.0 - eps_eff * eps_eff);
  const int m1 = r + n + 1;
  enum { kFid = 0, kSigma = 1, kSlack = 2, kT = 3 };
  sdp::Problem p({m1, d_b, n, 1});
  p.set_objective(kSigma, Matrix::Identity(d_b, d_b));

  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      p.add_real_part(p.add_constraint(i == j ? 1.0 : 0.0), kFid, i, j);
      if (i != j) p.add_imag_part(p.add_constraint(0.0), kFid, i, j);
    }
  }
  const int tr_con = p.add_constraint(1.0);
  for (int k = 0; k <= n; ++k) p.add_entry(tr_con, kFid, r + k, r + k, 1.0);
  const int fid_con = p.add_constraint(c_target);
  for (int a = 0; a <= n; ++a)
    for (int i = 0; i < r; ++i)
      if (v(a, i) != Complex(0.0)) p.add_real_part(fid_con, kFid, i, r + a, v(a, i));
  p.add_entry(fid_con, kT, 0, 0, -1.0);
  // slack - I x sigma' + rho~ = 0
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const bool same_a = i / d_b == j / d_b;
      int c = p.add_constraint(0.0);
      p.add_real_part(c, kSlack, i, j);
      if (same_a) p.add_real_part(c, kSigma, i % d_b, j % d_b, -1.0);
      p.add_real_part(c, kFid, r + i, r + j);
      if (i != j) {
        c = p.add_constraint(0.0);
        p.add_imag_part(c, kSlack, i, j);
        if (same_a) p.add_imag_part(c, kSigma, i % d_b, j % d_b, -1.0);
        p.add_imag_part(c, kFid, r + i, r + j);
      }
    }
  }
  const sdp::Solution s = sdp::solve(p, opts);
  if (s.status == sdp::Status::Infeasible) throw NumericError("smoothing program reported infeasibility");

  Matrix tilde = linalg::hermitian_part(s.X[kFid].block(r, r, n, n));
  tilde = linalg::spectral_apply(linalg::eigh(tilde), [](double x) { return std::max(x, 0.0); });
  const double tr_tilde = tilde.trace().real();
  if (tr_tilde > 1.0) tilde /= tr_tilde;
  const Operator smoothed{sp.rho.layout(), tilde};

  EntropyResult best = base;
  if (tr_tilde > 1e-12 && qmath::purified_distance(sp.rho, smoothed) <= eps + 1e-6) {
    Split ss = sp;
    ss.rho = smoothed;
    EntropyResult cand = min_entropy_split(ss, opts);
    if (cand.value >= base.value) {
      best = cand;
      best.smoothing_state = smoothed;
    }
  }
  best.sdp_iterations += s.iterations;
  if (s.dual_value > 0.0) best.certificate_gap = std::max(0.0, -std::log2(s.dual_value) - best.value);
  return best;
}

double vn_conditional_entropy(const Operator& rho, std::span<const std::string> a_labels) {
  if (!rho.is_psd()) throw DomainError("state must be positive semidefinite");
  if (std::abs(rho.real_trace() - 1.0) > kDefaultTol) throw DomainError("conditional entropy requires a normalized state");
  const Operator rho_b = qmath::partial_trace(rho, a_labels);
  return qmath::von_neumann_entropy(rho) - qmath::von_neumann_entropy(rho_b);
}

std::vector<QaepPoint> qaep_trend(const Operator& rho, std::span<const std::string> a_labels, double eps, int n_max,
                                  const sdp::Options& opts) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  const double target = vn_conditional_entropy(rho, a_labels);
  std::vector<QaepPoint> out;
  Operator power;
  std::vector<std::string> labels;
  for (int n = 1; n <= n_max; ++n) {
    const std::string suffix = "#" + std::to_string(n);
    const Operator copy = rho.with_layout(rho.layout().with_suffix(suffix));
    if (copy.dim() * power.dim() > 4096) throw SizeError("n-fold state exceeds dimension 4096");
    power = qmath::tensor(power, copy);
    for (const auto& l : a_labels) labels.push_back(l + suffix);
    const EntropyResult r = smooth_min_entropy(power, labels, eps, opts);
    out.push_back({n, r.value / n, target});
  }
  return out;
}

}  // namespace qdec::entropy
