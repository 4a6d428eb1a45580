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

// Unitary ensembles, two-fold twirls and their distance from the Haar twirl.
//
// The twirl of an ensemble D is G_D(X) = sum_i p_i (U_i x U_i) X (U_i x U_i)^dagger
// acting on C^d x C^d, labelled "X1", "X2" on input and "Y1", "Y2" on output
// when represented as a Channel.

#ifndef QDEC_DESIGNS_HPP
#define QDEC_DESIGNS_HPP

#include <vector>

#include "json.hpp"
#include "qdec/qmath.hpp"
#include "qdec/random.hpp"
#include "qdec/sdp.hpp"

namespace qdec::designs {

class UnitaryEnsemble {
 public:
  /// Symbolic Haar measure on U(d).
  static UnitaryEnsemble haar(int d);
  static UnitaryEnsemble uniform(std::vector<Matrix> unitaries);
  /// Validates probabilities (nonnegative, sum 1 +- 1e-12) and unitarity (1e-10).
  static UnitaryEnsemble weighted(std::vector<double> probs, std::vector<Matrix> unitaries);

  int dim() const { return dim_; }
  bool is_haar() const { return haar_; }
  std::size_t size() const { return unitaries_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<Matrix>& unitaries() const { return unitaries_; }

 private:
  UnitaryEnsemble() = default;
  int dim_ = 1;
  bool haar_ = false;
  std::vector<double> probs_;
  std::vector<Matrix> unitaries_;
};

/// w * a + (1 - w) * b as a single explicit ensemble.
UnitaryEnsemble mix(const UnitaryEnsemble& a, double w, const UnitaryEnsemble& b);

nlohmann::json ensemble_to_json(const UnitaryEnsemble& e);
UnitaryEnsemble ensemble_from_json(const nlohmann::json& j);

/// Haar-random unitary (Ginibre + QR with phase correction).
Matrix haar_sample(int d, Rng& rng);

/// Closed-form Haar twirl c_I I + c_F F of an operator on C^d x C^d.
Operator haar_twirl2(const Operator& rho);

Operator ensemble_twirl2(const UnitaryEnsemble& e, const Operator& rho);

/// Column-stacking superoperator matrix (d^4 x d^4) of the twirl.
Matrix moment_operator(const UnitaryEnsemble& e);

/// Normalized Choi matrix of the twirl as a channel X1 X2 -> Y1 Y2.
Channel twirl_channel(const UnitaryEnsemble& e);

enum class DeltaMethod { ChoiTraceBounds, Diamond };

struct DeltaBounds {
  double lower = 0.0;
  double upper = 0.0;
  DeltaMethod method = DeltaMethod::ChoiTraceBounds;
};

/// Interval containing ||G_D - G_Haar||_diamond. ChoiTraceBounds gives
/// [||J||_1, d^2 ||J||_1] with J the normalized Choi matrix of the difference;
/// Diamond solves the SDP (certified interval).
DeltaBounds design_delta(const UnitaryEnsemble& e, DeltaMethod method = DeltaMethod::ChoiTraceBounds,
                         const sdp::Options& opts = {});

/// The 24 single-qubit Cliffords modulo phase, generated from H and S.
UnitaryEnsemble clifford1q_ensemble();

Matrix hadamard();
Matrix phase_s();

/// Global phase fixed so that the first nonzero entry (column-major) is
/// positive real.
Matrix canonical_phase(const Matrix& u);

}  // namespace qdec::designs

#endif  // QDEC_DESIGNS_HPP
