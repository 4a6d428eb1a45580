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

// Conditional entropies in bits: min-entropy, smooth min-entropy (certified
// lower bound), conditional von Neumann entropy.

#ifndef QDEC_ENTROPY_HPP
#define QDEC_ENTROPY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdec/qmath.hpp"
#include "qdec/sdp.hpp"

namespace qdec::entropy {

struct EntropyResult {
  double value = 0.0;         // bits
  Operator optimizer_sigma;   // normalized state on the conditioning system
  double certificate_gap = 0.0;  // primal bound minus certified value (bits)
  std::optional<Operator> smoothing_state;
  double upper_bound = 0.0;   // log2 d_A
  int sdp_iterations = 0;
};

/// H_min(A|B) = -log2 min{tr s : I_A x s >= rho}. `a_labels` name A, the rest
/// of the layout is B. The returned value is certified: 2^{-value} is the
/// trace of a feasible s.
EntropyResult min_entropy(const Operator& rho, std::span<const std::string> a_labels,
                          const sdp::Options& opts = {});

/// Certified lower bound on the eps-smooth min-entropy with a feasible
/// smoothing state rho~ (purified distance <= eps + 1e-6).
EntropyResult smooth_min_entropy(const Operator& rho, std::span<const std::string> a_labels, double eps,
                                 const sdp::Options& opts = {});

/// H(AB) - H(B) for a normalized state.
double vn_conditional_entropy(const Operator& rho, std::span<const std::string> a_labels);

struct QaepPoint {
  int n = 0;
  double per_copy = 0.0;  // H_min^eps(A^n|B^n) / n
  double target = 0.0;    // H(A|B)
};

/// Smooth min-entropy rates of rho^{x n} for n = 1..n_max.
std::vector<QaepPoint> qaep_trend(const Operator& rho, std::span<const std::string> a_labels, double eps,
                                  int n_max, const sdp::Options& opts = {});

}  // namespace qdec::entropy

#endif  // QDEC_ENTROPY_HPP
