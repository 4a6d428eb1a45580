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

// Decoupling: the deviation ||T((U x I) rho (U x I)^dagger) - omega_B x rho_R||_1
// averaged over a unitary source, and the entropic upper bounds on it.

#ifndef QDEC_DECOUPLE_HPP
#define QDEC_DECOUPLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdec/circuits.hpp"
#include "qdec/designs.hpp"
#include "qdec/entropy.hpp"
#include "qdec/montecarlo.hpp"
#include "qdec/sdp.hpp"

namespace qdec::decouple {

/// rho on A x R and a Hermiticity-preserving map T: A -> B. A is given by the
/// channel's input layout; R is whatever else rho carries.
class Instance {
 public:
  Instance(Operator rho, Channel channel);

  const Operator& rho() const { return rho_; }
  const Channel& channel() const { return channel_; }
  std::vector<std::string> a_labels() const { return channel_.in_layout().labels(); }
  /// Labels of the input copy inside the Choi matrix (A').
  std::vector<std::string> a_prime_labels() const;
  int d_a() const { return channel_.in_dim(); }
  const SystemLayout& r_layout() const { return r_; }
  const Operator& omega_b() const { return omega_b_; }
  const Operator& rho_r() const { return rho_r_; }

  /// ||T((U x I) rho (U x I)^dagger) - omega_B x rho_R||_1.
  double deviation(const Matrix& u) const;

 private:
  Operator rho_;
  Channel channel_;
  SystemLayout r_;
  Operator omega_b_;
  Operator rho_r_;
  Operator target_;  // omega_B x rho_R in the output ordering of T
};

/// xi = Phi - pi x pi on C^d x C^d.
Operator decoupling_operator(int d, std::string a = "A", std::string a_tilde = "A~");

struct L2Identity {
  SampleStats lhs;   // Monte Carlo over Haar U
  double rhs = 0.0;  // d^2 / (d^2 - 1) ||E(xi)||_2^2 ||T(xi)||_2^2
};

/// E_U ||(T x E)((U x I) xi (U x I)^dagger)||_2^2 against its closed form.
/// T: A -> B and E: A~ -> R must share the input dimension.
L2Identity haar_l2_identity(const Channel& t, const Channel& e, long long trials, std::uint64_t seed);

struct SwapCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double tr_omega_sq = 0.0;    // tr omega_{A'B}^2
  double tr_omega_b_sq = 0.0;  // tr omega_B^2
};

/// E_U (U^dagger)^{x2} (T^dagger)^{x2}(F_B) U^{x2} = alpha I + beta F.
SwapCoefficients twirl_swap_coefficients(const Channel& t);

struct Sides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = ||xi||_1, rhs = ||lambda^{-1/4} xi lambda^{-1/4}||_2.
Sides weighted_l2_bound(const Operator& xi, const Operator& lambda);

/// lhs = |tr[(I_A' x omega_AB)(I_A x omega_A'B)(I_B x rho_AA')]| with omega_A'B
/// the copy of omega_AB on A', rhs = tr(omega_AB^2) sqrt(tr rho_AA'^2). The
/// layout of rho_AA' lists the A factors, then the same factors with suffix "'".
Sides cross_term_bound(const Operator& omega_ab, std::span<const std::string> a_labels, const Operator& rho_aa);

enum class BoundMode { Haar, Approx, Smooth };

struct BoundSpec {
  BoundMode mode = BoundMode::Haar;
  double delta = 0.0;
  double eps = 0.0;
};

struct BoundTerms {
  double value = 0.0;
  double h_omega = 0.0;  // (smooth) H_min(A'|B) of the Choi matrix, certified lower bound
  double h_rho = 0.0;    // (smooth) H_min(A|R) of rho, certified lower bound
  double factor = 1.0;   // sqrt(1 + 4 delta d_A^4)
  double additive = 0.0; // 8 d_A delta eps + 12 eps
  BoundSpec spec;
};

/// factor * 2^{-(h_omega + h_rho)/2} + additive.
BoundTerms bound_from_entropies(double h_omega, double h_rho, int d_a, const BoundSpec& spec);

BoundTerms decoupling_bound(const Instance& inst, const BoundSpec& spec, const sdp::Options& opts = {});

class Source {
 public:
  enum class Kind { Haar, Ensemble, Circuit };

  static Source haar(long long trials);
  /// Exact finite average when the ensemble is explicit; a symbolic Haar
  /// ensemble needs a trial count and is sampled.
  static Source ensemble(designs::UnitaryEnsemble e, long long trials = 0);
  static Source circuit(circuits::CircuitModel m, long long trials);

  Kind kind() const { return kind_; }
  long long trials() const { return trials_; }
  const std::optional<designs::UnitaryEnsemble>& unitary_ensemble() const { return ensemble_; }
  const std::optional<circuits::CircuitModel>& circuit_model() const { return circuit_; }

 private:
  Source() = default;
  Kind kind_ = Kind::Haar;
  long long trials_ = 0;
  std::optional<designs::UnitaryEnsemble> ensemble_;
  std::optional<circuits::CircuitModel> circuit_;
};

inline constexpr std::size_t kMaxExactEnsemble = 10000;

struct Empirical {
  double mean = 0.0;
  double stderr_mean = 0.0;  // 0 for exact averages
  double mean_square = 0.0;
  long long n = 0;           // trials, or ensemble size when exact
  bool exact = false;
};

/// Average deviation over the source. Monte Carlo trial i uses make_stream(seed, i).
Empirical empirical_decoupling_error(const Instance& inst, const Source& source, std::uint64_t seed);

/// (1/eps) (d_AS / sqrt(d_AE)) sqrt(1 + 4 delta d_A^4), d_A = d_AS d_AE. Values
/// above 1 are vacuous.
double subsystem_tail_bound(double eps, int d_as, int d_ae, double delta);

/// C (n^2 + n log2(1/delta)): the depth sufficient for a delta-approximate
/// two-design on n qubits, up to the unknown constant C.
double circuit_depth(int n, double delta, double c = 1.0);

}  // namespace qdec::decouple

#endif  // QDEC_DECOUPLE_HPP
