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

// Dense complex semidefinite programs in standard form
//
//   minimize (or maximize)  sum_b <C_b, X_b>
//   subject to              sum_b tr(A_ib X_b) = b_i,   X_b >= 0,
//
// with dual  max b.y  s.t.  Z = C - sum_i y_i A_i >= 0  (for the minimize
// sense), and the diamond norm of Hermiticity-preserving maps built on it.
//
// Constraint matrices are Hermitian and stored as (block, row, col, value)
// triplets; repeated positions add up.

#ifndef QDEC_SDP_HPP
#define QDEC_SDP_HPP

#include <string>
#include <vector>

#include "qdec/qmath.hpp"

namespace qdec::sdp {

/// Largest number of equality constraints (Schur complement order) accepted.
inline constexpr int kMaxConstraints = 3000;

/// Largest Choi dimension accepted by the diamond-norm program.
inline constexpr int kMaxDiamondChoiDim = 1024;

struct Entry {
  int block;
  int row;
  int col;
  Complex value;
};

enum class Sense { Minimize, Maximize };

class Problem {
 public:
  explicit Problem(std::vector<int> block_dims, Sense sense = Sense::Minimize);

  const std::vector<int>& block_dims() const { return dims_; }
  int n_blocks() const { return static_cast<int>(dims_.size()); }
  int n_constraints() const { return static_cast<int>(rhs_.size()); }
  int total_dim() const;
  Sense sense() const { return sense_; }

  /// Hermitian cost matrix of one block (zero unless set).
  void set_objective(int block, const Matrix& c);
  const std::vector<Matrix>& objective() const { return c_; }

  /// Appends an empty constraint with right-hand side `rhs`; returns its index.
  int add_constraint(double rhs);

  void add_entry(int con, int block, int row, int col, Complex value);
  /// Re(coeff * X_pq).
  void add_real_part(int con, int block, int p, int q, Complex coeff = 1.0);
  /// coeff * Im X_pq (p != q).
  void add_imag_part(int con, int block, int p, int q, double coeff = 1.0);
  /// coeff * tr X_block.
  void add_trace(int con, int block, double coeff = 1.0);
  /// coeff * tr(a X_block) for a dense Hermitian `a`.
  void add_hermitian(int con, int block, const Matrix& a, double coeff = 1.0);

  const std::vector<Entry>& entries(int con) const { return a_[static_cast<std::size_t>(con)]; }
  const RealVector& rhs() const { return rhs_; }

  /// (tr A_i X)_i.
  RealVector apply(const std::vector<Matrix>& x) const;
  /// sum_i y_i A_i, blockwise.
  std::vector<Matrix> adjoint(const RealVector& y) const;

  /// Throws DomainError if an objective or constraint matrix is not Hermitian.
  void validate(double tol = 1e-10) const;

 private:
  void check_index(int con, int block, int row, int col) const;

  std::vector<int> dims_;
  Sense sense_;
  std::vector<Matrix> c_;
  std::vector<std::vector<Entry>> a_;
  RealVector rhs_;
};

enum class Status { Optimal, MaxIter, Infeasible };

std::string to_string(Status s);

struct Options {
  double feas_tol = 1e-8;
  double gap_tol = 1e-7;  // relative
  int max_iter = 200;
  /// Solve the equivalent real symmetric program of twice the size instead.
  bool real_embedding = false;
};

struct Solution {
  Status status = Status::MaxIter;
  double primal_value = 0.0;  // in the problem's own sense
  double dual_value = 0.0;
  double gap = 0.0;           // |primal - dual|
  double rel_gap = 0.0;       // gap / (1 + |primal| + |dual|)
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double complementarity = 0.0;  // <X, Z> / n
  int iterations = 0;
  std::vector<Matrix> X;
  std::vector<Matrix> Z;
  RealVector y;
};

/// Infeasible primal-dual interior point method with Nesterov-Todd scaling
/// and Mehrotra predictor-corrector steps.
Solution solve(const Problem& p, const Options& opts = {});

struct DiamondResult {
  double value = 0.0;  // midpoint of the certified interval
  double lower = 0.0;  // trace norm at the recovered input state
  double upper = 0.0;  // dual objective after a feasibility shift
  int iterations = 0;
  Status status = Status::MaxIter;
};

/// Certified interval for the diamond norm of a Hermiticity-preserving map.
DiamondResult diamond_norm_bounds(const Channel& t, const Options& opts = {});

/// Midpoint of the certified interval; throws NumericError when the interval
/// is wider than 1e-6 * max(1, upper).
double diamond_norm(const Channel& t, const Options& opts = {});

}  // namespace qdec::sdp

#endif  // QDEC_SDP_HPP
