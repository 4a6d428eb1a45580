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

// Dense operator algebra on labelled tensor-product spaces, and the
// Choi-Jamiolkowski calculus for linear maps between them.
//
// Conventions:
//  * The first factor of a layout is the most significant index
//    (Kronecker ordering).
//  * The maximally entangled state has trace one:
//    Phi = |Phi><Phi|, |Phi> = sum_i |i>|i> / sqrt(d).
//  * Choi matrices live on (output) x (primed input copy) and are built from
//    the normalized Phi, so CP-TP maps have unit-trace Choi states.
//  * Superoperator matrices use column-stacking: vec(A X B) = (B^T x A) vec(X).

#ifndef QDEC_QMATH_HPP
#define QDEC_QMATH_HPP

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdec/errors.hpp"
#include "qdec/linalg.hpp"

namespace qdec {

/// Ordered list of named tensor factors.
class SystemLayout {
 public:
  struct Factor {
    std::string label;
    int dim = 1;
    bool operator==(const Factor&) const = default;
  };

  /// The trivial (one-dimensional, factor-free) layout.
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Factor> factors);
  SystemLayout(std::initializer_list<Factor> factors)
      : SystemLayout(std::vector<Factor>(factors)) {}

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  int total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;  // throws LayoutError
  int dim_of(std::string_view label) const;
  std::vector<std::string> labels() const;

  /// Product dimension of the named factors.
  int dim_of(std::span<const std::string> labels) const;

  SystemLayout concat(const SystemLayout& other) const;
  SystemLayout select(std::span<const std::string> labels) const;
  SystemLayout without(std::span<const std::string> labels) const;
  SystemLayout with_suffix(std::string_view suffix) const;

  /// Same dimensions factor by factor (labels may differ).
  bool same_shape(const SystemLayout& other) const;

  bool operator==(const SystemLayout&) const = default;

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

/// Square complex matrix attached to a layout. Immutable value type.
class Operator {
 public:
  Operator() : layout_(), m_(Matrix::Ones(1, 1)) {}
  Operator(SystemLayout layout, Matrix entries);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Complex trace() const { return m_.trace(); }
  double real_trace() const { return m_.trace().real(); }

  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_psd(double tol = kDefaultTol) const;
  bool is_subnormalized(double tol = kDefaultTol) const;
  bool is_unitary(double tol = kDefaultTol) const;

  Operator adjoint() const { return {layout_, m_.adjoint()}; }
  Operator hermitian_part() const;
  Operator with_layout(SystemLayout layout) const;  // same shape required

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  Operator operator*(Complex s) const { return {layout_, m_ * s}; }
  Operator operator*(double s) const { return {layout_, m_ * s}; }

 private:
  void require_same_layout(const Operator& o, const char* op) const;

  SystemLayout layout_;
  Matrix m_;
};

inline Operator operator*(double s, const Operator& op) { return op * s; }

/// Linear map between operator spaces stored through its Choi matrix on
/// out_layout x in_layout' (the input copy carries the "'" suffix).
class Channel {
 public:
  Channel(SystemLayout in_layout, SystemLayout out_layout, Operator choi);

  const SystemLayout& in_layout() const { return in_; }
  const SystemLayout& out_layout() const { return out_; }
  const Operator& choi() const { return choi_; }
  int in_dim() const { return in_.total_dim(); }
  int out_dim() const { return out_.total_dim(); }

  bool is_hermiticity_preserving(double tol = kDefaultTol) const;
  bool is_cp(double tol = kDefaultTol) const;
  bool is_tp(double tol = kDefaultTol) const;

  Channel operator+(const Channel& o) const;
  Channel operator-(const Channel& o) const;
  Channel operator*(double s) const;

 private:
  SystemLayout in_;
  SystemLayout out_;
  Operator choi_;
};

/// Suffix marking the input copy inside Choi layouts.
inline constexpr std::string_view kChoiSuffix = "'";

namespace qmath {

// -- construction ----------------------------------------------------------

Operator identity(const SystemLayout& layout);
Operator zero(const SystemLayout& layout);
Operator completely_mixed(const SystemLayout& layout);

/// |i><j| on a layout.
Operator basis_op(const SystemLayout& layout, int i, int j);

/// Swap F = sum_ij |i><j| x |j><i| on C^d x C^d, labelled (left, right).
Operator swap_operator(int d, std::string left = "X1", std::string right = "X2");

/// Trace-one maximally entangled projector on C^d x C^d.
Operator max_entangled(int d, std::string left = "A", std::string right = "A'");

/// Maximally entangled projector between two layouts of the same shape.
Operator max_entangled(const SystemLayout& left, const SystemLayout& right);

// -- structure -------------------------------------------------------------

Operator tensor(std::span<const Operator> ops);
Operator tensor(const Operator& a, const Operator& b);

/// Reorders the tensor factors to the given label order (a permutation of the
/// layout's labels).
Operator permute(const Operator& op, std::span<const std::string> order);

/// Reorders `op` so its layout equals `target` (same factor set).
Operator align(const Operator& op, const SystemLayout& target);

/// Traces out the listed factors. Tracing every factor yields a 1x1 operator.
Operator partial_trace(const Operator& op, std::span<const std::string> over);
Operator partial_trace(const Operator& op, std::initializer_list<std::string> over);

Operator relabel(const Operator& op, const SystemLayout& layout);

/// (U x I_rest) X (U x I_rest)^dagger with U acting on the named factors.
Operator conjugate_on(const Operator& x, const Matrix& u, std::span<const std::string> labels);

// -- norms and distances ---------------------------------------------------

enum class Schatten { One, Two, Infinity };

double schatten_norm(const Matrix& m, Schatten p);
double schatten_norm(const Operator& op, Schatten p);

/// ||sqrt(rho) sqrt(sigma)||_1 for PSD inputs.
double fidelity(const Operator& rho, const Operator& sigma, double tol = kDefaultTol);

/// F + sqrt((1 - tr rho)(1 - tr sigma)) for subnormalized inputs.
double generalized_fidelity(const Operator& rho, const Operator& sigma,
                            double tol = kDefaultTol);

/// sqrt(1 - generalized_fidelity^2).
double purified_distance(const Operator& rho, const Operator& sigma,
                         double tol = kDefaultTol);

double trace_distance(const Operator& a, const Operator& b);  // ||a - b||_1

// -- entropies of spectra --------------------------------------------------

/// -tr rho log2 rho, with 0 log 0 = 0.
double von_neumann_entropy(const Operator& rho);

}  // namespace qmath

// -- Choi-Jamiolkowski calculus -------------------------------------------

using LinearMap = std::function<Operator(const Operator&)>;

namespace qmath {

/// (T x I)(Phi) for a linear map given as a function on operators over
/// `in_layout`. The output layout is taken from T's image.
Operator choi_of_map(const LinearMap& apply, const SystemLayout& in_layout);
Channel channel_from_map(const LinearMap& apply, const SystemLayout& in_layout);

Operator to_choi(const Channel& t);

/// (T x I_rest)(X): T acts on the factors of X named by its input layout; the
/// result carries T's output factors first, then the untouched factors of X.
Operator apply_channel(const Channel& t, const Operator& x);

/// T^dagger(Y) with respect to the Hilbert-Schmidt product.
Operator apply_adjoint(const Channel& t, const Operator& y);

/// The unique map E (input: copy of the `a_labels` factors with suffix "~",
/// output: the remaining factors) with (I_A x E)(Phi_{A A~}) = rho.
Channel choi_preimage(const Operator& rho, std::span<const std::string> a_labels,
                      double tol = kDefaultTol);

/// Layout of the "~" copy used by choi_preimage.
SystemLayout tilde(const SystemLayout& layout);

// -- standard channels -----------------------------------------------------

Channel identity_channel(const SystemLayout& in, const SystemLayout& out);
Channel partial_trace_channel(const SystemLayout& in, std::span<const std::string> traced,
                              const SystemLayout& out);
Channel unitary_channel(const Matrix& u, const SystemLayout& in, const SystemLayout& out);
Channel completely_depolarizing(const SystemLayout& in, const SystemLayout& out);
/// Measurement in the computational basis (dephasing).
Channel dephasing_channel(const SystemLayout& in, const SystemLayout& out);
Channel zero_channel(const SystemLayout& in, const SystemLayout& out);

}  // namespace qmath
}  // namespace qdec

#endif  // QDEC_QMATH_HPP
