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
#include "qdec/entropy.hpp"
#include "qdec/random.hpp"

using namespace qdec;

namespace {

const std::vector<std::string> kA{"A"};

double lemma3_lhs(const Operator& rho_ab, const Operator& sigma, int d_a) {
  const Matrix s = linalg::pow_psd_pinv(sigma.matrix(), -0.5, 1e-10);
  const Matrix k = linalg::kron(Matrix::Identity(d_a, d_a), s) * rho_ab.matrix();
  return (k * k).trace().real() / rho_ab.real_trace();
}

Operator classical_pair() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  return {SystemLayout{{"A", 2}, {"B", 2}}, m};
}

}  // namespace

TEST_CASE("min-entropy of standard states") {
  const Operator phi = qmath::max_entangled(2, "A", "B");
  const auto r = entropy::min_entropy(phi, kA);
  CHECK(r.value == doctest::Approx(-1).epsilon(1e-5));
  CHECK(-std::log2(oracle::min_trace_sigma_qubit(phi.matrix(), 2)) == doctest::Approx(-1).epsilon(1e-5));
  CHECK(r.optimizer_sigma.real_trace() == doctest::Approx(1));

  Rng rng = make_stream(31, 0);
  const Operator sigma = random::density(SystemLayout{{"B", 2}}, rng);
  const Operator prod = qmath::tensor(qmath::completely_mixed(SystemLayout{{"A", 2}}), sigma);
  CHECK(entropy::min_entropy(prod, kA).value == doctest::Approx(1).epsilon(1e-5));

  const Operator cl = classical_pair();
  CHECK(entropy::min_entropy(cl, kA).value == doctest::Approx(0).epsilon(1e-5));
  CHECK(std::abs(-std::log2(oracle::min_trace_sigma_qubit(cl.matrix(), 2))) < 1e-5);

  // A listed second in the layout.
  const Operator swapped = qmath::permute(prod, std::vector<std::string>{"B", "A"});
  CHECK(entropy::min_entropy(swapped, kA).value == doctest::Approx(1).epsilon(1e-5));
}

TEST_CASE("trivial conditioning system") {
  Rng rng = make_stream(32, 0);
  const Operator rho = random::density(SystemLayout{{"A", 3}}, rng);
  const double lmax = linalg::eigvalsh(rho.matrix()).maxCoeff();
  CHECK(entropy::min_entropy(rho, kA).value == doctest::Approx(-std::log2(lmax)).epsilon(1e-7));
}

TEST_CASE("domain errors") {
  const Operator zero = qmath::zero(SystemLayout{{"A", 2}, {"B", 2}});
  CHECK_THROWS_AS(entropy::min_entropy(zero, kA), DomainError);
  CHECK_THROWS_AS(entropy::min_entropy(qmath::identity(SystemLayout{{"A", 2}, {"B", 2}}), kA), DomainError);
  const Operator phi = qmath::max_entangled(2, "A", "B");
  CHECK_THROWS_AS(entropy::smooth_min_entropy(phi, kA, 1.0), DomainError);
  CHECK_THROWS_AS(entropy::smooth_min_entropy(phi, kA, -0.1), DomainError);
  CHECK_THROWS_AS(entropy::vn_conditional_entropy(phi * 0.5, kA), DomainError);
}

TEST_CASE("certificates on random states") {
  Rng rng = make_stream(33, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int d_a = 2 + trial % 2, d_b = 2 + (trial / 2) % 2;
    const SystemLayout l{{"A", d_a}, {"B", d_b}};
    const Operator rho = trial % 3 == 0 ? random::subnormalized_density(l, rng) : random::density(l, rng, 1 + trial % 5);
    const auto r = entropy::min_entropy(rho, kA);
    const double bound = std::pow(2.0, -r.value);
    CHECK(lemma3_lhs(rho, r.optimizer_sigma, d_a) <= bound + 1e-6);
    CHECK(r.value >= -std::log2(d_a) - 1e-7);
    CHECK(r.value <= std::log2(d_a) + 1e-7 - std::log2(rho.real_trace()));
    const Matrix gap = bound * linalg::kron(Matrix::Identity(d_a, d_a), r.optimizer_sigma.matrix()) - rho.matrix();
    CHECK(linalg::eigvalsh(gap).minCoeff() >= -1e-7);
    CHECK(r.certificate_gap < 1e-5);
    if (d_b == 2) CHECK(bound == doctest::Approx(oracle::min_trace_sigma_qubit(rho.matrix(), d_a)).epsilon(1e-5));
  }
}

TEST_CASE("smooth min-entropy") {
  const Operator phi = qmath::max_entangled(2, "A", "B");
  const auto e0 = entropy::smooth_min_entropy(phi, kA, 0.0);
  CHECK(e0.value == doctest::Approx(entropy::min_entropy(phi, kA).value).epsilon(1e-5));

  Rng rng = make_stream(34, 0);
  const Operator rho = random::density(SystemLayout{{"A", 2}, {"B", 2}}, rng);
  const auto s1 = entropy::smooth_min_entropy(rho, kA, 0.01);
  const auto s2 = entropy::smooth_min_entropy(rho, kA, 0.1);
  CHECK(s2.value >= s1.value - 1e-6);
  const double h = entropy::min_entropy(rho, kA).value;
  CHECK(s1.value >= h - 1e-6);
  REQUIRE(s2.smoothing_state.has_value());
  CHECK(qmath::purified_distance(rho, *s2.smoothing_state) <= 0.1 + 1e-6);
  CHECK(s2.smoothing_state->is_subnormalized());

  for (int trial = 0; trial < 6; ++trial) {
    const Operator r = random::density(SystemLayout{{"A", 2}, {"B", 2 + trial % 2}}, rng);
    CHECK(entropy::smooth_min_entropy(r, kA, 0.05).value >= entropy::min_entropy(r, kA).value - 1e-6);
  }
}

TEST_CASE("smooth min-entropy of a pure product state against random search") {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.0;
  const Operator rho{SystemLayout{{"A", 2}, {"B", 2}}, m};
  const double eps = 0.1;
  const auto r = entropy::smooth_min_entropy(rho, kA, eps);
  CHECK(r.value >= 0.0);
  CHECK(r.value <= 1.0);

  // Random feasible points of the eps-ball give lower bounds on the optimum.
  Rng rng = make_stream(35, 0);
  double best = -std::log2(oracle::min_trace_sigma_qubit(m, 2));
  for (int trial = 0; trial < 300; ++trial) {
    const Operator other = random::density(rho.layout(), rng, 1 + trial % 4);
    std::uniform_real_distribution<double> u(0.0, 0.1);
    const double w = u(rng);
    const Operator cand = rho * (1.0 - w) + other * w;
    if (qmath::purified_distance(rho, cand) > eps) continue;
    best = std::max(best, -std::log2(oracle::min_trace_sigma_qubit(cand.matrix(), 2)));
  }
  CHECK(best > 0.0);
  CHECK(r.value >= best - 1e-6);
}

TEST_CASE("conditional von Neumann entropy") {
  CHECK(entropy::vn_conditional_entropy(qmath::max_entangled(2, "A", "B"), kA) == doctest::Approx(-1).epsilon(1e-12));
  const Operator pp = qmath::completely_mixed(SystemLayout{{"A", 2}, {"B", 2}});
  CHECK(entropy::vn_conditional_entropy(pp, kA) == doctest::Approx(1).epsilon(1e-12));

  Rng rng = make_stream(36, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator rho = random::density(SystemLayout{{"A", 2}, {"B", 2}}, rng);
    // reduced state by explicit index sum over A
    Matrix rb = Matrix::Zero(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rb(i, j) += rho.matrix()(a * 2 + i, a * 2 + j);
    auto h = [](const Matrix& x) {
      Eigen::ComplexEigenSolver<Matrix> es(x);
      double s = 0.0;
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double v = es.eigenvalues()(i).real();
        if (v > 0) s -= v * std::log2(v);
      }
      return s;
    };
    const double ref = h(rho.matrix()) - h(rb);
    const double val = entropy::vn_conditional_entropy(rho, kA);
    CHECK(std::abs(val - ref) < 1e-9);
    CHECK(val >= -1.0 - 1e-12);
    CHECK(val <= 1.0 + 1e-12);
  }
}

TEST_CASE("asymptotic equipartition trend") {
  const Operator pp = qmath::completely_mixed(SystemLayout{{"A", 2}, {"B", 2}});
  const auto t = entropy::qaep_trend(pp, kA, 0.0, 2);
  REQUIRE(t.size() == 2);
  for (const auto& p : t) CHECK(p.per_copy == doctest::Approx(1).epsilon(1e-6));

  const Operator phi = qmath::max_entangled(2, "A", "B");
  const auto s = entropy::qaep_trend(phi, kA, 0.05, 2);
  REQUIRE(s.size() == 2);
  CHECK(s[0].target == doctest::Approx(-1));
  // Scaling Phi^{x n} by 1 - eps^2 stays in the ball and gains -log2(1 - eps^2)
  // bits in total, so the rate approaches H(A|B) = -1 from above.
  const double gain = -std::log2(1.0 - 0.05 * 0.05);
  CHECK(s[0].per_copy == doctest::Approx(-1.0 + gain).epsilon(1e-5));
  CHECK(s[1].per_copy == doctest::Approx(-1.0 + gain / 2).epsilon(1e-5));
  CHECK(std::abs(s[1].per_copy - s[1].target) <= std::abs(s[0].per_copy - s[0].target) + 1e-9);
}
