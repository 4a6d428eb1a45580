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

// Seeded random streams and random matrices, states and channels.

#ifndef QDEC_RANDOM_HPP
#define QDEC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qdec/qmath.hpp"

namespace qdec {

using Rng = std::mt19937_64;

/// Independent generator for trial `stream` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

namespace random {

/// Entries i.i.d. standard complex normal (unit variance).
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary: Ginibre + QR with the phases of diag(R) removed.
Matrix haar_unitary(int d, Rng& rng);

/// GUE-like Hermitian matrix.
Matrix hermitian(int d, Rng& rng);

/// Random density matrix G G^dagger / tr with G of size d x rank
/// (rank <= 0 means full rank).
Operator density(const SystemLayout& layout, Rng& rng, int rank = 0);

/// Random density scaled by a uniform trace in (0, 1].
Operator subnormalized_density(const SystemLayout& layout, Rng& rng);

/// Random CP trace-preserving map from a Ginibre Choi matrix.
Channel cptp_channel(const SystemLayout& in, const SystemLayout& out, Rng& rng);

/// Random Hermiticity-preserving map (Hermitian Choi matrix).
Channel hermitian_map(const SystemLayout& in, const SystemLayout& out, Rng& rng);

}  // namespace random
}  // namespace qdec

#endif  // QDEC_RANDOM_HPP
