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

#include "oracles.hpp"
#include "qdec/designs.hpp"
#include "qdec/random.hpp"

using namespace qdec;
using designs::DeltaMethod;
using designs::UnitaryEnsemble;

namespace {

SystemLayout pair2(int d) { return SystemLayout{{"X1", d}, {"X2", d}}; }

UnitaryEnsemble paulis() {
  const auto p = oracle::paulis();
  return UnitaryEnsemble::uniform({Matrix::Identity(2, 2), p[0], p[1], p[2]});
}

UnitaryEnsemble identity_only(int d) { return UnitaryEnsemble::uniform({Matrix::Identity(d, d)}); }

}  // namespace

TEST_CASE("Haar samples have the expected low moments") {
  const int d = 3;
  const int n = 100000;
  Rng rng = make_stream(5, 0);
  double m2 = 0.0;
  Complex m1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix u = designs::haar_sample(d, rng);
    m1 += u(0, 0);
    m2 += std::norm(u(0, 0));
  }
  CHECK(m2 / n == doctest::Approx(1.0 / d).epsilon(0.02));
  CHECK(std::abs(m1 / static_cast<double>(n)) < 0.01);
}

TEST_CASE("closed-form Haar twirl") {
  for (int d : {2, 3}) {
    const Operator id = qmath::identity(pair2(d));
    const Operator f = qmath::swap_operator(d);
    CHECK((designs::haar_twirl2(id).matrix() - id.matrix()).norm() < 1e-12);
    CHECK((designs::haar_twirl2(f).matrix() - f.matrix()).norm() < 1e-12);

    // Invariance under conjugation by V x V and idempotence.
    Rng rng = make_stream(6, static_cast<std::uint64_t>(d));
    const Operator rho = random::density(pair2(d), rng);
    const Operator tw = designs::haar_twirl2(rho);
    const Matrix u = designs::haar_sample(d, rng);
    const Matrix v = linalg::kron(u, u);
    CHECK((v * tw.matrix() * v.adjoint() - tw.matrix()).norm() < 1e-12);
    CHECK((designs::haar_twirl2(tw).matrix() - tw.matrix()).norm() < 1e-12);
    CHECK(tw.real_trace() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(designs::haar_twirl2(qmath::identity(SystemLayout{{"X", 3}})), LayoutError);
  CHECK_THROWS_AS(designs::haar_twirl2(qmath::identity(SystemLayout{{"X", 1}})), DomainError);
}

TEST_CASE("Haar twirl matches a Monte Carlo average") {
  const int d = 2;
  const int n = 20000;
  Rng rng = make_stream(7, 0);
  const Operator rho = random::density(pair2(d), rng);
  Matrix acc = Matrix::Zero(4, 4);
  for (int i = 0; i < n; ++i) {
    const Matrix u = designs::haar_sample(d, rng);
    const Matrix v = linalg::kron(u, u);
    acc += v * rho.matrix() * v.adjoint();
  }
  acc /= static_cast<double>(n);
  CHECK((acc - designs::haar_twirl2(rho).matrix()).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("single-qubit Clifford group is a unitary 2-design") {
  const UnitaryEnsemble c = designs::clifford1q_ensemble();
  REQUIRE(c.size() == 24);

  auto index_of = [&](const Matrix& m) {
    const Matrix k = designs::canonical_phase(m);
    for (std::size_t i = 0; i < c.size(); ++i)
      if ((c.unitaries()[i] - k).cwiseAbs().maxCoeff() < 1e-9) return static_cast<int>(i);
    return -1;
  };
  CHECK(index_of(designs::hadamard()) >= 0);
  CHECK(index_of(designs::phase_s()) >= 0);
  for (const auto& a : c.unitaries())
    for (const auto& b : c.unitaries()) REQUIRE(index_of(a * b) >= 0);

  CHECK((designs::moment_operator(c) - designs::moment_operator(UnitaryEnsemble::haar(2))).cwiseAbs().maxCoeff() <
        1e-10);
  Rng rng = make_stream(8, 0);
  const Operator rho = random::density(pair2(2), rng);
  CHECK((designs::ensemble_twirl2(c, rho).matrix() - designs::haar_twirl2(rho).matrix()).norm() < 1e-10);

  const auto tb = designs::design_delta(c);
  CHECK(tb.upper <= 1e-9);
  const auto dm = designs::design_delta(c, DeltaMethod::Diamond);
  CHECK(dm.upper <= 1e-6);
  CHECK(dm.lower <= 1e-9);
}

TEST_CASE("distance from Haar for non-designs") {
  const auto tb = designs::design_delta(identity_only(2));
  const auto dm = designs::design_delta(identity_only(2), DeltaMethod::Diamond);
  CHECK(dm.lower > 0.5);
  CHECK(dm.lower <= dm.upper + 1e-9);
  // The diamond norm lies inside the Choi trace-norm interval.
  CHECK(dm.lower >= tb.lower - 1e-6);
  CHECK(dm.upper <= tb.upper + 1e-6);

  // Paulis form a 1-design but not a 2-design.
  const UnitaryEnsemble p = paulis();
  Rng rng = make_stream(9, 0);
  const Matrix x = random::ginibre(2, 2, rng);
  Matrix avg = Matrix::Zero(2, 2);
  for (std::size_t i = 0; i < p.size(); ++i) avg += p.probs()[i] * p.unitaries()[i] * x * p.unitaries()[i].adjoint();
  CHECK((avg - x.trace() / 2.0 * Matrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(designs::design_delta(p, DeltaMethod::Diamond).lower > 0.1);

  CHECK(designs::design_delta(UnitaryEnsemble::haar(2)).upper == 0.0);
}

TEST_CASE("mixing with a design shrinks the distance linearly") {
  const UnitaryEnsemble c = designs::clifford1q_ensemble();
  double prev = 1e9;
  const double base = designs::design_delta(identity_only(2)).lower;
  for (double w : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double v = designs::design_delta(designs::mix(c, w, identity_only(2))).lower;
    CHECK(v <= prev + 1e-12);
    CHECK(v == doctest::Approx((1.0 - w) * base).epsilon(1e-9).scale(1.0));
    prev = v;
  }
}

TEST_CASE("twirl channels are convex and idempotent") {
  Rng rng = make_stream(10, 0);
  std::vector<Matrix> us;
  for (int i = 0; i < 3; ++i) us.push_back(designs::haar_sample(2, rng));
  const UnitaryEnsemble a = UnitaryEnsemble::uniform({us[0], us[1]});
  const UnitaryEnsemble b = UnitaryEnsemble::uniform({us[2]});
  const UnitaryEnsemble m = designs::mix(a, 0.3, b);
  const Matrix lhs = designs::twirl_channel(m).choi().matrix();
  const Matrix rhs = 0.3 * designs::twirl_channel(a).choi().matrix() + 0.7 * designs::twirl_channel(b).choi().matrix();
  CHECK((lhs - rhs).norm() < 1e-12);
  CHECK(designs::twirl_channel(m).choi().real_trace() == doctest::Approx(1.0));

  const Matrix g = designs::moment_operator(UnitaryEnsemble::haar(2));
  CHECK((g * g - g).norm() < 1e-12);
  const RealVector ev = linalg::eigvalsh(g);
  int ones = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - 1.0) < 1e-9) ++ones;
    else CHECK(std::abs(ev(i)) < 1e-9);
  }
  CHECK(ones == 2);

  // The explicit-ensemble Choi agrees with the Choi of the explicit map.
  const Channel ch = designs::twirl_channel(a);
  const Operator rho = random::density(pair2(2), rng);
  const Operator out = qmath::apply_channel(ch, rho);
  CHECK((out.matrix() - designs::ensemble_twirl2(a, rho).matrix()).norm() < 1e-12);
}

TEST_CASE("ensemble validation and serialization") {
  CHECK_THROWS_AS(UnitaryEnsemble::weighted({0.5, 0.6}, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}),
                  ParameterError);
  CHECK_THROWS_AS(UnitaryEnsemble::uniform({2.0 * Matrix::Identity(2, 2)}), DomainError);
  CHECK_THROWS_AS(UnitaryEnsemble::uniform({}), ParameterError);

  const UnitaryEnsemble c = designs::clifford1q_ensemble();
  const UnitaryEnsemble back = designs::ensemble_from_json(designs::ensemble_to_json(c));
  REQUIRE(back.size() == c.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK((back.unitaries()[i] - c.unitaries()[i]).norm() < 1e-15);
  const UnitaryEnsemble h = designs::ensemble_from_json(designs::ensemble_to_json(UnitaryEnsemble::haar(4)));
  CHECK(h.is_haar());
  CHECK(h.dim() == 4);
}
