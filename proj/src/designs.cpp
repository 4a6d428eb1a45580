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

#include "qdec/designs.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "qdec/serialize.hpp"

namespace qdec::designs {

namespace {

int root_dim(int big) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(big))));
  if (d * d != big) throw LayoutError("two-fold twirl needs an operator on C^d x C^d");
  return d;
}

SystemLayout pair_layout(int d, const char* a, const char* b) { return SystemLayout{{a, d}, {b, d}}; }

}  // namespace

// ---------------------------------------------------------------------------
// ensembles

UnitaryEnsemble UnitaryEnsemble::haar(int d) {
  if (d < 1) throw ParameterError("ensemble dimension must be positive");
  UnitaryEnsemble e;
  e.dim_ = d;
  e.haar_ = true;
  return e;
}

UnitaryEnsemble UnitaryEnsemble::uniform(std::vector<Matrix> unitaries) {
  const std::size_t n = unitaries.size();
  return weighted(std::vector<double>(n, 1.0 / static_cast<double>(n)), std::move(unitaries));
}

UnitaryEnsemble UnitaryEnsemble::weighted(std::vector<double> probs, std::vector<Matrix> unitaries) {
  if (unitaries.empty()) throw ParameterError("ensemble needs at least one element");
  if (probs.size() != unitaries.size()) throw ParameterError("one probability per unitary is required");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ParameterError("ensemble probabilities must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ParameterError("ensemble probabilities must sum to one");
  const auto d = unitaries.front().rows();
  for (const auto& u : unitaries) {
    if (u.rows() != d || u.cols() != d) throw LayoutError("ensemble unitaries must share one dimension");
    if ((u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
      throw DomainError("ensemble element is not unitary");
  }
  UnitaryEnsemble e;
  e.dim_ = static_cast<int>(d);
  e.probs_ = std::move(probs);
  e.unitaries_ = std::move(unitaries);
  return e;
}

UnitaryEnsemble mix(const UnitaryEnsemble& a, double w, const UnitaryEnsemble& b) {
  if (a.is_haar() || b.is_haar()) throw ParameterError("cannot mix the symbolic Haar ensemble");
  if (!(w >= 0.0 && w <= 1.0)) throw ParameterError("mixing weight must lie in [0, 1]");
  if (a.dim() != b.dim()) throw LayoutError("mixed ensembles must share one dimension");
  std::vector<double> p;
  std::vector<Matrix> u;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w == 0.0) break;
    p.push_back(w * a.probs()[i]);
    u.push_back(a.unitaries()[i]);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (w == 1.0) break;
    p.push_back((1.0 - w) * b.probs()[i]);
    u.push_back(b.unitaries()[i]);
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return UnitaryEnsemble::weighted(std::move(p), std::move(u));
}

nlohmann::json ensemble_to_json(const UnitaryEnsemble& e) {
  nlohmann::json j;
  j["dim"] = e.dim();
  if (e.is_haar()) {
    j["elements"] = "haar";
    return j;
  }
  nlohmann::json els = nlohmann::json::array();
  for (std::size_t i = 0; i < e.size(); ++i)
    els.push_back({{"p", e.probs()[i]}, {"U", operator_to_json(Operator(SystemLayout{{"U", e.dim()}}, e.unitaries()[i]))}});
  j["elements"] = std::move(els);
  return j;
}

UnitaryEnsemble ensemble_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("elements"))
    throw ParameterError("ensemble container needs 'dim' and 'elements'");
  const int d = j.at("dim").get<int>();
  const auto& els = j.at("elements");
  if (els.is_string()) {
    if (els.get<std::string>() != "haar") throw ParameterError("unknown ensemble tag");
    return UnitaryEnsemble::haar(d);
  }
  std::vector<double> p;
  std::vector<Matrix> u;
  for (const auto& e : els) {
    p.push_back(e.at("p").get<double>());
    u.push_back(operator_from_json(e.at("U")).matrix());
    if (u.back().rows() != d) throw LayoutError("ensemble element has the wrong dimension");
  }
  return UnitaryEnsemble::weighted(std::move(p), std::move(u));
}

// ---------------------------------------------------------------------------
// twirls

Matrix haar_sample(int d, Rng& rng) { return random::haar_unitary(d, rng); }

Operator haar_twirl2(const Operator& rho) {
  const int d = root_dim(rho.dim());
  if (d < 2) throw DomainError("Haar twirl is degenerate for d = 1");
  const Matrix f = qmath::swap_operator(d).matrix();
  const Matrix& m = rho.matrix();
  const Complex tr = m.trace();
  const Complex trf = (m * f).trace();
  const double dd = static_cast<double>(d);
  const double norm = dd * dd * (dd * dd - 1.0);
  const Complex c_i = (dd * dd * tr - dd * trf) / norm;
  const Complex c_f = (dd * dd * trf - dd * tr) / norm;
  return {rho.layout(), c_i * Matrix::Identity(d * d, d * d) + c_f * f};
}

Operator ensemble_twirl2(const UnitaryEnsemble& e, const Operator& rho) {
  if (rho.dim() != e.dim() * e.dim()) throw LayoutError("operator does not match the ensemble dimension");
  if (e.is_haar()) return haar_twirl2(rho);
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Matrix v = linalg::kron(e.unitaries()[i], e.unitaries()[i]);
    out.noalias() += e.probs()[i] * (v * rho.matrix() * v.adjoint());
  }
  return {rho.layout(), out};
}

Matrix moment_operator(const UnitaryEnsemble& e) {
  const int d = e.dim();
  const int big = d * d;
  if (big * big > 4096) throw SizeError("moment operator larger than 4096 x 4096");
  if (e.is_haar()) {
    Matrix m(big * big, big * big);
    const SystemLayout l = pair_layout(d, "X1", "X2");
    for (int j = 0; j < big; ++j)
      for (int i = 0; i < big; ++i) {
        const Matrix img = haar_twirl2(qmath::basis_op(l, i, j)).matrix();
        m.col(i + j * big) = Eigen::Map<const Vector>(img.data(), big * big);
      }
    return m;
  }
  Matrix m = Matrix::Zero(big * big, big * big);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Matrix v = linalg::kron(e.unitaries()[i], e.unitaries()[i]);
    m.noalias() += e.probs()[i] * linalg::kron(v.conjugate(), v);
  }
  return m;
}

Channel twirl_channel(const UnitaryEnsemble& e) {
  const int d = e.dim();
  const int big = d * d;
  if (big * big > 4096) throw SizeError("twirl Choi matrix larger than 4096 x 4096");
  const SystemLayout in = pair_layout(d, "X1", "X2");
  const SystemLayout out = pair_layout(d, "Y1", "Y2");
  if (e.is_haar()) {
    return {in, out, qmath::choi_of_map([&](const Operator& x) { return haar_twirl2(x).with_layout(out); }, in)};
  }
  // (V x I)|Phi> has entries V[o, i] / d at (o, i).
  Matrix w(big * big, static_cast<Eigen::Index>(e.size()));
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Matrix v = linalg::kron(e.unitaries()[k], e.unitaries()[k]);
    for (int o = 0; o < big; ++o)
      for (int i = 0; i < big; ++i) w(o * big + i, static_cast<Eigen::Index>(k)) = v(o, i) * std::sqrt(e.probs()[k]) / static_cast<double>(d);
  }
  const Matrix choi = w * w.adjoint();
  return {in, out, Operator(out.concat(in.with_suffix(kChoiSuffix)), linalg::hermitian_part(choi))};
}

DeltaBounds design_delta(const UnitaryEnsemble& e, DeltaMethod method, const sdp::Options& opts) {
  DeltaBounds b;
  b.method = method;
  if (e.is_haar()) return b;
  const Channel diff = twirl_channel(e) - twirl_channel(UnitaryEnsemble::haar(e.dim()));
  if (method == DeltaMethod::ChoiTraceBounds) {
    const double j1 = qmath::schatten_norm(diff.choi(), qmath::Schatten::One);
    b.lower = j1;
    b.upper = static_cast<double>(diff.in_dim()) * j1;
    return b;
  }
  const sdp::DiamondResult r = sdp::diamond_norm_bounds(diff, opts);
  if (r.status != sdp::Status::Optimal) throw NumericError("diamond-norm program did not converge");
  b.lower = r.lower;
  b.upper = r.upper;
  return b;
}

// ---------------------------------------------------------------------------
// Clifford group

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix phase_s() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = Complex(0.0, 1.0);
  return s;
}

Matrix canonical_phase(const Matrix& u) {
  for (Eigen::Index c = 0; c < u.cols(); ++c)
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      const double a = std::abs(u(r, c));
      if (a > 1e-12) return u * (std::conj(u(r, c)) / a);
    }
  return u;
}

UnitaryEnsemble clifford1q_ensemble() {
  const std::vector<Matrix> gens{hadamard(), phase_s()};
  std::vector<Matrix> group{Matrix::Identity(2, 2)};
  std::deque<std::size_t> queue{0};
  int products = 0;
  while (!queue.empty()) {
    const Matrix g = group[queue.front()];
    queue.pop_front();
    for (const auto& h : gens) {
      if (++products > 10000) throw NumericError("Clifford closure exceeded 10^4 products");
      const Matrix c = canonical_phase(h * g);
      bool seen = false;
      for (const auto& x : group)
        if ((x - c).cwiseAbs().maxCoeff() < 1e-9) {
          seen = true;
          break;
        }
      if (!seen) {
        group.push_back(c);
        queue.push_back(group.size() - 1);
      }
    }
  }
  if (group.size() != 24) {
    std::ostringstream msg;
    msg << "Clifford closure produced " << group.size() << " elements";
    throw NumericError(msg.str());
  }
  return UnitaryEnsemble::uniform(std::move(group));
}

}  // namespace qdec::designs
