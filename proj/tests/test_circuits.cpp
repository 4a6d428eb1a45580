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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qdec/circuits.hpp"
#include "qdec/designs.hpp"
#include "qdec/random.hpp"

using namespace qdec;
using circuits::CircuitModel;
using circuits::GateSet;

namespace {

int bit(int x, int q, int n) { return (x >> (n - 1 - q)) & 1; }

// Entry-by-entry definition of a gate on qubits (i, j).
Matrix embed_oracle(const Matrix& g, int i, int j, int n) {
  const int dim = 1 << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      bool rest_equal = true;
      for (int q = 0; q < n; ++q)
        if (q != i && q != j && bit(x, q, n) != bit(y, q, n)) rest_equal = false;
      if (!rest_equal) continue;
      out(x, y) = g(2 * bit(x, i, n) + bit(x, j, n), 2 * bit(y, i, n) + bit(y, j, n));
    }
  return out;
}

// Unitary relabelling qubit q to position perm[q].
Matrix qubit_permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const int dim = 1 << n;
  Matrix p = Matrix::Zero(dim, dim);
  for (int x = 0; x < dim; ++x) {
    int y = 0;
    for (int q = 0; q < n; ++q) y |= bit(x, q, n) << (n - 1 - perm[static_cast<std::size_t>(q)]);
    p(y, x) = 1.0;
  }
  return p;
}

// Frobenius distance of the sampled moment operator from the Haar one.
double moment_distance(const CircuitModel& m, int samples, std::uint64_t seed) {
  std::vector<Matrix> us;
  for (int k = 0; k < samples; ++k) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
    us.push_back(circuits::sample_circuit_unitary(m, rng).matrix());
  }
  const auto e = designs::UnitaryEnsemble::uniform(us);
  return (designs::moment_operator(e) - designs::moment_operator(designs::UnitaryEnsemble::haar(4))).norm();
}

}  // namespace

TEST_CASE("gate embedding") {
  Rng rng = make_stream(1, 0);
  for (int n = 2; n <= 4; ++n) {
    for (const auto& [i, j] : circuits::qubit_pairs(n)) {
      const Matrix g = random::haar_unitary(4, rng);
      const Matrix e = circuits::embed_gate(g, i, j, n);
      CHECK((e - embed_oracle(g, i, j, n)).cwiseAbs().maxCoeff() < 1e-14);
      const Matrix back = circuits::embed_gate(g.adjoint(), i, j, n) * e;
      CHECK((back - Matrix::Identity(1 << n, 1 << n)).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(circuits::qubit_pairs(n).size() == static_cast<std::size_t>(n * (n - 1) / 2));
  }
  const Matrix c = circuits::cnot();
  CHECK((circuits::embed_gate(c, 0, 1, 2) - c).norm() == 0.0);
  CHECK((circuits::embed_gate(c, 1, 2, 3) - linalg::kron(Matrix::Identity(2, 2), c)).norm() == 0.0);
  CHECK_THROWS_AS(circuits::embed_gate(c, 1, 1, 3), LayoutError);
}

TEST_CASE("sampled circuits") {
  Rng rng = make_stream(2, 0);
  const Operator w0 = circuits::sample_circuit_unitary(CircuitModel{3, GateSet::haar_u4(), 0}, rng);
  CHECK((w0.matrix() - Matrix::Identity(8, 8)).norm() == 0.0);
  CHECK(w0.layout().labels() == std::vector<std::string>{"q0", "q1", "q2"});
  for (int k = 0; k < 10; ++k) {
    const Matrix w = circuits::sample_circuit_unitary(CircuitModel{3, GateSet::haar_u4(), 20}, rng).matrix();
    CHECK((w.adjoint() * w - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-11);
  }
  CHECK_THROWS_AS(circuits::sample_circuit_unitary(CircuitModel{1, GateSet::haar_u4(), 1}, rng), ParameterError);
  CHECK_THROWS_AS(circuits::sample_circuit_unitary(CircuitModel{11, GateSet::haar_u4(), 1}, rng), SizeError);
  CHECK_THROWS_AS(circuits::sample_circuit_unitary(CircuitModel{2, GateSet::haar_u4(), -1}, rng), ParameterError);
  CHECK_THROWS_AS(GateSet::from_ensemble(designs::clifford1q_ensemble()), LayoutError);
}

TEST_CASE("sampled moments approach the Haar moment operator with depth") {
  // For haar_u4 on two qubits every depth t >= 1 is exactly Haar, so the
  // finite gate set is used to see convergence.
  const GateSet g = GateSet::from_ensemble(circuits::ht_cnot_gates());
  const double shallow = moment_distance(CircuitModel{2, g, 2}, 400, 3);
  const double deep = moment_distance(CircuitModel{2, g, 50}, 400, 4);
  CHECK(deep < shallow);
}

TEST_CASE("reduced-coordinate proxy equals the full Choi trace distance") {
  Rng rng = make_stream(5, 0);
  const Matrix haar_choi = designs::twirl_channel(designs::UnitaryEnsemble::haar(4)).choi().matrix();
  for (int t : {1, 3}) {
    std::vector<Matrix> us;
    for (int k = 0; k < 40; ++k)
      us.push_back(circuits::sample_circuit_unitary(CircuitModel{2, GateSet::from_ensemble(circuits::ht_cnot_gates()), t}, rng)
                       .matrix());
    const Matrix full = designs::twirl_channel(designs::UnitaryEnsemble::uniform(us)).choi().matrix() - haar_choi;
    CHECK(circuits::design_proxy(us) == doctest::Approx(qmath::schatten_norm(full, qmath::Schatten::One)).epsilon(1e-9));
  }
}

TEST_CASE("depth sweep") {
  const GateSet g = GateSet::from_ensemble(circuits::ht_cnot_gates());
  const auto rows = circuits::circuit_design_sweep(2, g, {10, 0, 1, 5}, 400, 11);
  REQUIRE(rows.size() == 4);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k - 1].t < rows[k].t);
  for (const auto& r : rows) {
    CHECK(r.n_samples == 400);
    CHECK(r.seed == 11);
    CHECK(r.delta_estimate <= rows.front().delta_estimate + 1e-12);
  }
  for (std::size_t k = 1; k < rows.size(); ++k)
    CHECK(rows[k].delta_estimate <= rows[k - 1].delta_estimate + 2.0 * (rows[k].stderr_estimate + rows[k - 1].stderr_estimate));

  // Depth 0 is the singleton identity ensemble on U(4).
  const auto id = designs::UnitaryEnsemble::uniform({Matrix::Identity(4, 4)});
  CHECK(rows.front().delta_estimate == doctest::Approx(designs::design_delta(id).lower).epsilon(1e-9));
  CHECK(rows.front().stderr_estimate < 1e-9);

  // Same seed, same rows.
  const auto again = circuits::circuit_design_sweep(2, g, {10, 0, 1, 5}, 400, 11);
  for (std::size_t k = 0; k < rows.size(); ++k) CHECK(again[k].delta_estimate == rows[k].delta_estimate);

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto hr = circuits::circuit_design_sweep(2, GateSet::haar_u4(), {0, 1, 3}, 100, seed);
    for (const auto& r : hr) CHECK(r.delta_estimate <= hr.front().delta_estimate);
  }

  CHECK_THROWS_AS(circuits::circuit_design_sweep(4, g, {1}, 10, 1), SizeError);
  CHECK_THROWS_AS(circuits::circuit_design_sweep(2, g, {1}, 1, 1), ParameterError);
  CHECK_THROWS_AS(circuits::circuit_design_sweep(2, g, {-1}, 10, 1), ParameterError);
}

TEST_CASE("relabelling qubits leaves the circuit distribution invariant") {
  // Compare E |W_xy|^2 for W and for P W P^dagger with a cyclic relabelling.
  const int n = 3;
  const int samples = 6000;
  const Matrix p = qubit_permutation({1, 2, 0});
  const CircuitModel m{n, GateSet::haar_u4(), 1};
  RealMatrix s1 = RealMatrix::Zero(8, 8), s2 = RealMatrix::Zero(8, 8), q1 = s1, q2 = s1;
  for (int k = 0; k < samples; ++k) {
    Rng a = make_stream(21, static_cast<std::uint64_t>(k));
    Rng b = make_stream(22, static_cast<std::uint64_t>(k));
    const RealMatrix x = (p * circuits::sample_circuit_unitary(m, a).matrix() * p.adjoint()).cwiseAbs2();
    const RealMatrix y = circuits::sample_circuit_unitary(m, b).matrix().cwiseAbs2();
    s1 += x;
    q1 += x.cwiseProduct(x);
    s2 += y;
    q2 += y.cwiseProduct(y);
  }
  const double ns = samples;
  int worst = 0;
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const double m1 = s1(r, c) / ns, m2 = s2(r, c) / ns;
      const double v = (q1(r, c) / ns - m1 * m1 + q2(r, c) / ns - m2 * m2) / ns;
      if (std::abs(m1 - m2) > 4.0 * std::sqrt(v) + 1e-12) ++worst;
    }
  CHECK(worst == 0);

  // The statistic does see a non-uniform pair rule: a fixed pair (0, 1).
  RealMatrix fixed = RealMatrix::Zero(8, 8);
  Rng rng = make_stream(23, 0);
  for (int k = 0; k < 2000; ++k)
    fixed += circuits::embed_gate(random::haar_unitary(4, rng), 0, 1, n).cwiseAbs2();
  fixed /= 2000.0;
  const RealMatrix permuted = (p * fixed.cast<Complex>() * p.adjoint()).real();
  CHECK((fixed - permuted).cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("depth constant fit") {
  std::vector<circuits::SweepRow> rows;
  for (double delta : {0.5, 0.1, 0.01}) {
    circuits::SweepRow r;
    r.delta_estimate = delta;
    r.t = static_cast<int>(std::lround(3.0 * (4.0 + 2.0 * std::log2(1.0 / delta))));
    rows.push_back(r);
  }
  rows.push_back({0, 1.5, 0.0, 10, 1});
  const auto fit = circuits::fit_depth_constant(2, rows);
  CHECK(fit.points == 3);
  CHECK(fit.c == doctest::Approx(3.0).epsilon(0.05));
}
