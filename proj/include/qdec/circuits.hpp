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

// Random two-qubit-gate circuits and sampled distance of their two-fold twirl
// from the Haar twirl.
//
// Qubit 0 is the most significant tensor factor. A gate on the pair (i, j),
// i < j, acts with qubit i as its first factor.

#ifndef QDEC_CIRCUITS_HPP
#define QDEC_CIRCUITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdec/designs.hpp"
#include "qdec/random.hpp"

namespace qdec::circuits {

inline constexpr int kMaxSampleQubits = 10;
inline constexpr int kMaxSweepQubits = 3;

class GateSet {
 public:
  enum class Kind { HaarU4, Ensemble };

  /// Haar measure on U(4).
  static GateSet haar_u4();
  /// Explicit weighted ensemble over U(4); a symbolic Haar ensemble maps to haar_u4().
  static GateSet from_ensemble(designs::UnitaryEnsemble e);

  Kind kind() const { return kind_; }
  std::string name() const;
  Matrix sample(Rng& rng) const;

 private:
  explicit GateSet(Kind k) : kind_(k) {}
  Kind kind_;
  std::optional<designs::UnitaryEnsemble> ensemble_;
};

struct CircuitModel {
  int n_qubits = 2;
  GateSet gate_set = GateSet::haar_u4();
  int t = 0;

  void validate() const;
};

/// Unordered pairs (i, j), i < j, in lexicographic order.
std::vector<std::pair<int, int>> qubit_pairs(int n);

/// 2^n x 2^n matrix of `gate` acting on qubits (i, j).
Matrix embed_gate(const Matrix& gate, int i, int j, int n);

/// w <- embed_gate(gate, i, j, n) * w without forming the embedding.
void apply_gate(Matrix& w, const Matrix& gate, int i, int j, int n);

Matrix cnot();
Matrix t_gate();

/// Universal finite gate set: CNOT (a x b), a, b in {H, T, HT}, uniform.
designs::UnitaryEnsemble ht_cnot_gates();

/// W = W_t ... W_1 with uniformly random pairs; layout q0 ... q{n-1}.
Operator sample_circuit_unitary(const CircuitModel& m, Rng& rng);

/// ||omega_emp - J_Haar||_1 for the uniform ensemble of `samples`, where both
/// Choi matrices of the two-fold twirl are taken in the symmetric/antisymmetric
/// block coordinates in which they are supported. Lower-bound proxy for the
/// diamond distance.
double design_proxy(const std::vector<Matrix>& samples);

struct SweepRow {
  int t = 0;
  double delta_estimate = 0.0;
  double stderr_estimate = 0.0;  // delete-one-batch jackknife
  long long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Proxy for each depth, rows sorted by t. Sample k at depth t draws from
/// make_stream(seed, (t << 32) | k).
std::vector<SweepRow> circuit_design_sweep(int n_qubits, const GateSet& gates, std::vector<int> t_values,
                                           long long n_samples, std::uint64_t seed, int batches = 10);

struct DepthFit {
  double c = 0.0;        // least squares t ~ c (n^2 + n log2(1/delta)) through the origin
  double residual = 0.0; // root mean square
  int points = 0;
};

/// Estimate only; rows with delta outside (0, 1) are skipped.
DepthFit fit_depth_constant(int n_qubits, const std::vector<SweepRow>& rows);

}  // namespace qdec::circuits

#endif  // QDEC_CIRCUITS_HPP
