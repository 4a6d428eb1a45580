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

#include "qdec/decouple.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdec::decouple {

namespace {

std::vector<std::string> primed(const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l + std::string(kChoiSuffix));
  return out;
}

double tr_square(const Operator& op) { return (op.matrix() * op.matrix()).trace().real(); }

}  // namespace

// ---------------------------------------------------------------------------
// instance

Instance::Instance(Operator rho, Channel channel) : rho_(std::move(rho)), channel_(std::move(channel)) {
  if (!rho_.is_hermitian()) throw DomainError("rho is not Hermitian");
  if (!rho_.is_psd()) throw DomainError("rho is not positive semidefinite");
  if (rho_.real_trace() > 1.0 + kDefaultTol) throw DomainError("rho has trace larger than one");
  if (!channel_.is_hermiticity_preserving()) throw DomainError("map does not preserve Hermiticity");
  const auto a = a_labels();
  for (const auto& f : channel_.in_layout().factors()) {
    if (!rho_.layout().contains(f.label) || rho_.layout().dim_of(f.label) != f.dim)
      throw LayoutError("map input factor '" + f.label + "' is missing from rho or has another dimension");
  }
  r_ = rho_.layout().without(a);
  for (const auto& f : channel_.out_layout().factors())
    if (r_.contains(f.label)) throw LayoutError("map output factor '" + f.label + "' collides with a factor of R");
  omega_b_ = qmath::partial_trace(channel_.choi(), a_prime_labels());
  rho_r_ = qmath::partial_trace(rho_, a);
  const Operator image = qmath::apply_channel(channel_, rho_);
  target_ = qmath::align(qmath::tensor(omega_b_, rho_r_), image.layout());
}

std::vector<std::string> Instance::a_prime_labels() const { return primed(a_labels()); }

double Instance::deviation(const Matrix& u) const {
  const auto a = a_labels();
  const Operator x = qmath::conjugate_on(rho_, u, a);
  const Operator y = qmath::apply_channel(channel_, x);
  return qmath::schatten_norm(linalg::hermitian_part(y.matrix() - target_.matrix()), qmath::Schatten::One);
}

// ---------------------------------------------------------------------------
// 2-norm identity

Operator decoupling_operator(int d, std::string a, std::string a_tilde) {
  if (d < 2) throw DomainError("decoupling operator needs d >= 2");
  const Operator phi = qmath::max_entangled(d, a, a_tilde);
  return phi - qmath::completely_mixed(phi.layout());
}

L2Identity haar_l2_identity(const Channel& t, const Channel& e, long long trials, std::uint64_t seed) {
  if (trials < 100) throw ParameterError("2-norm identity needs at least 100 Monte Carlo trials");
  if (t.in_dim() != e.in_dim()) throw LayoutError("T and E must have inputs of equal dimension");
  const int d = t.in_dim();
  if (d < 2) throw DomainError("2-norm identity needs d_A >= 2");
  if (!t.is_hermiticity_preserving() || !e.is_hermiticity_preserving())
    throw DomainError("maps must preserve Hermiticity");
  const Operator xi =
      qmath::max_entangled(t.in_layout(), e.in_layout()) -
      qmath::tensor(qmath::completely_mixed(t.in_layout()), qmath::completely_mixed(e.in_layout()));

  L2Identity out;
  const double t_xi = std::pow(qmath::schatten_norm(qmath::apply_channel(t, xi), qmath::Schatten::Two), 2);
  const double e_xi = std::pow(qmath::schatten_norm(qmath::apply_channel(e, xi), qmath::Schatten::Two), 2);
  const double dd = static_cast<double>(d) * d;
  out.rhs = dd / (dd - 1.0) * e_xi * t_xi;

  const auto a = t.in_layout().labels();
  const auto samples = run_trials<double>(trials, seed, [&](Rng& rng, long long) {
    const Operator x = qmath::conjugate_on(xi, random::haar_unitary(d, rng), a);
    const Operator y = qmath::apply_channel(t, qmath::apply_channel(e, x));
    return std::pow(qmath::schatten_norm(y, qmath::Schatten::Two), 2);
  });
  out.lhs = summarize(samples);
  return out;
}

SwapCoefficients twirl_swap_coefficients(const Channel& t) {
  const int d = t.in_dim();
  if (d < 2) throw DomainError("swap coefficients need d_A >= 2");
  SwapCoefficients c;
  const Operator& omega = t.choi();
  c.tr_omega_sq = tr_square(omega);
  c.tr_omega_b_sq = tr_square(qmath::partial_trace(omega, primed(t.in_layout().labels())));
  const double dd = static_cast<double>(d);
  c.alpha = (dd * dd * c.tr_omega_b_sq - dd * c.tr_omega_sq) / (dd * dd - 1.0);
  c.beta = (dd * dd * c.tr_omega_sq - dd * c.tr_omega_b_sq) / (dd * dd - 1.0);
  return c;
}

// ---------------------------------------------------------------------------
// proof-level inequalities

Sides weighted_l2_bound(const Operator& xi, const Operator& lambda) {
  if (xi.dim() != lambda.dim()) throw LayoutError("xi and lambda must have equal dimension");
  if (!xi.is_hermitian()) throw DomainError("xi is not Hermitian");
  if (!lambda.is_hermitian()) throw DomainError("lambda is not Hermitian");
  if (std::abs(lambda.real_trace() - 1.0) > kDefaultTol) throw DomainError("lambda must have trace one");
  const auto e = linalg::eigh(lambda.matrix());
  if (e.values(0) <= 1e-10) throw DomainError("lambda must be invertible (min eigenvalue > 1e-10)");
  const Matrix q = linalg::spectral_apply(e, [](double v) { return std::pow(v, -0.25); });
  Sides s;
  s.lhs = qmath::schatten_norm(xi, qmath::Schatten::One);
  s.rhs = qmath::schatten_norm(Matrix(q * xi.matrix() * q), qmath::Schatten::Two);
  return s;
}

Sides cross_term_bound(const Operator& omega_ab, std::span<const std::string> a_labels, const Operator& rho_aa) {
  if (!omega_ab.is_hermitian() || !rho_aa.is_hermitian()) throw DomainError("inputs must be Hermitian");
  const SystemLayout a = omega_ab.layout().select(a_labels);
  const SystemLayout b = omega_ab.layout().without(a_labels);
  const SystemLayout a2 = a.with_suffix(kChoiSuffix);
  const SystemLayout full = a.concat(a2).concat(b);
  const Operator rho = qmath::align(rho_aa, a.concat(a2));

  std::vector<SystemLayout::Factor> copy;
  for (const auto& f : omega_ab.layout().factors())
    copy.push_back({a.contains(f.label) ? f.label + std::string(kChoiSuffix) : f.label, f.dim});
  const Operator omega2 = qmath::relabel(omega_ab, SystemLayout(std::move(copy)));

  const Matrix m1 = qmath::align(qmath::tensor(qmath::identity(a2), omega_ab), full).matrix();
  const Matrix m2 = qmath::align(qmath::tensor(qmath::identity(a), omega2), full).matrix();
  const Matrix m3 = qmath::align(qmath::tensor(rho, qmath::identity(b)), full).matrix();
  Sides s;
  s.lhs = std::abs((m1 * m2 * m3).trace());
  s.rhs = tr_square(omega_ab) * std::sqrt(std::max(0.0, tr_square(rho_aa)));
  return s;
}

// ---------------------------------------------------------------------------
// bounds

BoundTerms bound_from_entropies(double h_omega, double h_rho, int d_a, const BoundSpec& spec) {
  if (!(spec.delta >= 0.0)) throw ParameterError("delta must be nonnegative");
  if (!(spec.eps >= 0.0)) throw ParameterError("eps must be nonnegative");
  BoundTerms b;
  b.spec = spec;
  b.h_omega = h_omega;
  b.h_rho = h_rho;
  const double da = d_a;
  if (spec.mode != BoundMode::Haar) b.factor = std::sqrt(1.0 + 4.0 * spec.delta * std::pow(da, 4));
  if (spec.mode == BoundMode::Smooth) b.additive = 8.0 * da * spec.delta * spec.eps + 12.0 * spec.eps;
  b.value = b.factor * std::exp2(-0.5 * (h_omega + h_rho)) + b.additive;
  return b;
}

BoundTerms decoupling_bound(const Instance& inst, const BoundSpec& spec, const sdp::Options& opts) {
  const auto a = inst.a_labels();
  const auto ap = inst.a_prime_labels();
  const Operator& omega = inst.channel().choi();
  if (spec.mode != BoundMode::Smooth) {
    const double h_omega = entropy::min_entropy(omega, ap, opts).value;
    const double h_rho = entropy::min_entropy(inst.rho(), a, opts).value;
    return bound_from_entropies(h_omega, h_rho, inst.d_a(), spec);
  }
  const double limit = std::sqrt(std::min(inst.rho().real_trace(), omega.real_trace()));
  if (!(spec.eps >= 0.0) || spec.eps >= limit) {
    std::ostringstream msg;
    msg << "eps = " << spec.eps << " must lie in [0, min(sqrt tr rho, sqrt tr omega)) = [0, " << limit << ")";
    throw DomainError(msg.str());
  }
  const double h_omega = entropy::smooth_min_entropy(omega, ap, spec.eps, opts).value;
  const double h_rho = entropy::smooth_min_entropy(inst.rho(), a, spec.eps, opts).value;
  return bound_from_entropies(h_omega, h_rho, inst.d_a(), spec);
}

// ---------------------------------------------------------------------------
// empirical averages

Source Source::haar(long long trials) {
  Source s;
  s.kind_ = Kind::Haar;
  s.trials_ = trials;
  return s;
}

Source Source::ensemble(designs::UnitaryEnsemble e, long long trials) {
  if (e.is_haar()) return haar(trials);
  Source s;
  s.kind_ = Kind::Ensemble;
  s.trials_ = trials;
  s.ensemble_ = std::move(e);
  return s;
}

Source Source::circuit(circuits::CircuitModel m, long long trials) {
  Source s;
  s.kind_ = Kind::Circuit;
  s.trials_ = trials;
  s.circuit_ = std::move(m);
  return s;
}

namespace {

Empirical from_samples(const std::vector<double>& xs) {
  const SampleStats st = summarize(xs);
  Empirical e;
  e.mean = st.mean;
  e.stderr_mean = st.stderr_mean;
  e.mean_square = st.mean_square;
  e.n = st.n;
  return e;
}

void require_trials(long long trials) {
  if (trials < 2) throw ParameterError("Monte Carlo sources need at least 2 trials");
}

}  // namespace

Empirical empirical_decoupling_error(const Instance& inst, const Source& source, std::uint64_t seed) {
  const int d = inst.d_a();
  switch (source.kind()) {
    case Source::Kind::Haar: {
      require_trials(source.trials());
      return from_samples(run_trials<double>(source.trials(), seed, [&](Rng& rng, long long) {
        return inst.deviation(random::haar_unitary(d, rng));
      }));
    }
    case Source::Kind::Ensemble: {
      const auto& e = *source.unitary_ensemble();
      if (e.dim() != d) throw LayoutError("ensemble dimension differs from d_A");
      if (e.size() > kMaxExactEnsemble) {
        require_trials(source.trials());
        std::discrete_distribution<std::size_t> pick(e.probs().begin(), e.probs().end());
        return from_samples(run_trials<double>(source.trials(), seed, [&](Rng& rng, long long) {
          auto local = pick;
          return inst.deviation(e.unitaries()[local(rng)]);
        }));
      }
      Empirical out;
      out.exact = true;
      out.n = static_cast<long long>(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        const double x = inst.deviation(e.unitaries()[i]);
        out.mean += e.probs()[i] * x;
        out.mean_square += e.probs()[i] * x * x;
      }
      return out;
    }
    case Source::Kind::Circuit:
      break;
  }
  const auto& m = *source.circuit_model();
  m.validate();
  if ((1 << m.n_qubits) != d) throw LayoutError("circuit acts on 2^n dimensions, which differs from d_A");
  require_trials(source.trials());
  return from_samples(run_trials<double>(source.trials(), seed, [&](Rng& rng, long long) {
    return inst.deviation(circuits::sample_circuit_unitary(m, rng).matrix());
  }));
}

double subsystem_tail_bound(double eps, int d_as, int d_ae, double delta) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (d_as < 1 || d_ae < 1) throw ParameterError("dimensions must be positive");
  if (!(delta >= 0.0)) throw ParameterError("delta must be nonnegative");
  const double da = static_cast<double>(d_as) * d_ae;
  return (1.0 / eps) * (d_as / std::sqrt(static_cast<double>(d_ae))) * std::sqrt(1.0 + 4.0 * delta * std::pow(da, 4));
}

double circuit_depth(int n, double delta, double c) {
  if (n < 1) throw ParameterError("n must be positive");
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  const double nn = n;
  return c * (nn * nn + nn * std::log2(1.0 / delta));
}

}  // namespace qdec::decouple
