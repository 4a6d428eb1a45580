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

#include "qdec/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace qdec {

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  long long total = 1;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw LayoutError("factor '" + f.label + "' has non-positive dimension");
    if (!seen.insert(f.label).second) throw LayoutError("duplicate label '" + f.label + "'");
    total *= f.dim;
    if (total > (1LL << 30)) throw SizeError("layout dimension overflow");
  }
  total_dim_ = static_cast<int>(total);
}

bool SystemLayout::contains(std::string_view label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t SystemLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw LayoutError("unknown label '" + std::string(label) + "' in " + to_string());
}

int SystemLayout::dim_of(std::string_view label) const { return factors_[index_of(label)].dim; }

int SystemLayout::dim_of(std::span<const std::string> labels) const {
  int d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  auto fs = factors_;
  fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
  return SystemLayout(std::move(fs));
}

SystemLayout SystemLayout::select(std::span<const std::string> labels) const {
  std::vector<Factor> fs;
  for (const auto& l : labels) fs.push_back(factors_[index_of(l)]);
  return SystemLayout(std::move(fs));
}

SystemLayout SystemLayout::without(std::span<const std::string> labels) const {
  for (const auto& l : labels) (void)index_of(l);
  std::vector<Factor> fs;
  for (const auto& f : factors_)
    if (std::find(labels.begin(), labels.end(), f.label) == labels.end()) fs.push_back(f);
  return SystemLayout(std::move(fs));
}

SystemLayout SystemLayout::with_suffix(std::string_view suffix) const {
  auto fs = factors_;
  for (auto& f : fs) f.label += suffix;
  return SystemLayout(std::move(fs));
}

bool SystemLayout::same_shape(const SystemLayout& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].dim != other.factors_[i].dim) return false;
  return true;
}

std::string SystemLayout::to_string() const {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < factors_.size(); ++i)
    s << (i ? ", " : "") << factors_[i].label << ":" << factors_[i].dim;
  s << "]";
  return s.str();
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(SystemLayout layout, Matrix entries)
    : layout_(std::move(layout)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) throw LayoutError("operator matrix is not square");
  if (m_.rows() != layout_.total_dim()) {
    std::ostringstream msg;
    msg << "matrix of size " << m_.rows() << " does not match layout " << layout_.to_string();
    throw LayoutError(msg.str());
  }
}

bool Operator::is_hermitian(double tol) const { return linalg::hermitian_distance(m_) <= tol; }

bool Operator::is_psd(double tol) const {
  return is_hermitian(tol) && linalg::eigvalsh(m_)(0) >= -tol;
}

bool Operator::is_subnormalized(double tol) const {
  return is_psd(tol) && real_trace() <= 1.0 + tol;
}

bool Operator::is_unitary(double tol) const {
  const Matrix d = m_.adjoint() * m_ - Matrix::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::hermitian_part() const { return {layout_, linalg::hermitian_part(m_)}; }

Operator Operator::with_layout(SystemLayout layout) const {
  if (!layout.same_shape(layout_))
    throw LayoutError("cannot relabel " + layout_.to_string() + " as " + layout.to_string());
  return {std::move(layout), m_};
}

void Operator::require_same_layout(const Operator& o, const char* op) const {
  if (!(layout_ == o.layout_))
    throw LayoutError(std::string("operands of '") + op + "' have layouts " +
                      layout_.to_string() + " and " + o.layout_.to_string());
}

Operator Operator::operator+(const Operator& o) const {
  require_same_layout(o, "+");
  return {layout_, m_ + o.m_};
}

Operator Operator::operator-(const Operator& o) const {
  require_same_layout(o, "-");
  return {layout_, m_ - o.m_};
}

Operator Operator::operator*(const Operator& o) const {
  require_same_layout(o, "*");
  return {layout_, m_ * o.m_};
}

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(SystemLayout in_layout, SystemLayout out_layout, Operator choi)
    : in_(std::move(in_layout)), out_(std::move(out_layout)), choi_(std::move(choi)) {
  const SystemLayout expected = out_.concat(in_.with_suffix(kChoiSuffix));
  if (!(choi_.layout() == expected))
    throw LayoutError("Choi layout " + choi_.layout().to_string() + " should be " +
                      expected.to_string());
}

bool Channel::is_hermiticity_preserving(double tol) const { return choi_.is_hermitian(tol); }

bool Channel::is_cp(double tol) const { return choi_.is_psd(tol); }

bool Channel::is_tp(double tol) const {
  const Operator reduced = qmath::partial_trace(choi_, out_.labels());
  const Matrix target = Matrix::Identity(in_dim(), in_dim()) / static_cast<double>(in_dim());
  return (reduced.matrix() - target).cwiseAbs().maxCoeff() <= tol;
}

Channel Channel::operator+(const Channel& o) const {
  if (!(in_ == o.in_) || !(out_ == o.out_)) throw LayoutError("channel layouts differ");
  return {in_, out_, choi_ + o.choi_};
}

Channel Channel::operator-(const Channel& o) const {
  if (!(in_ == o.in_) || !(out_ == o.out_)) throw LayoutError("channel layouts differ");
  return {in_, out_, choi_ - o.choi_};
}

Channel Channel::operator*(double s) const { return {in_, out_, choi_ * s}; }

namespace qmath {

// ---------------------------------------------------------------------------
// construction

Operator identity(const SystemLayout& layout) {
  const int d = layout.total_dim();
  return {layout, Matrix::Identity(d, d)};
}

Operator zero(const SystemLayout& layout) {
  const int d = layout.total_dim();
  return {layout, Matrix::Zero(d, d)};
}

Operator completely_mixed(const SystemLayout& layout) {
  const int d = layout.total_dim();
  return {layout, Matrix::Identity(d, d) / static_cast<double>(d)};
}

Operator basis_op(const SystemLayout& layout, int i, int j) {
  const int d = layout.total_dim();
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return {layout, std::move(m)};
}

Operator swap_operator(int d, std::string left, std::string right) {
  if (d < 1) throw ParameterError("swap_operator requires d >= 1");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return {SystemLayout{{std::move(left), d}, {std::move(right), d}}, std::move(f)};
}

Operator max_entangled(const SystemLayout& left, const SystemLayout& right) {
  if (!left.same_shape(right) && left.total_dim() != right.total_dim())
    throw LayoutError("maximally entangled state needs equal dimensions");
  const int d = left.total_dim();
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return {left.concat(right), v * v.adjoint()};
}

Operator max_entangled(int d, std::string left, std::string right) {
  if (d < 1) throw ParameterError("max_entangled requires d >= 1");
  return max_entangled(SystemLayout{{std::move(left), d}}, SystemLayout{{std::move(right), d}});
}

// ---------------------------------------------------------------------------
// structure

Operator tensor(const Operator& a, const Operator& b) {
  SystemLayout layout = a.layout().concat(b.layout());
  return {std::move(layout), linalg::kron(a.matrix(), b.matrix())};
}

Operator tensor(std::span<const Operator> ops) {
  Operator out;
  for (const auto& op : ops) out = tensor(out, op);
  return out;
}

namespace {

// new linear index -> old linear index for a factor permutation
std::vector<int> permutation_map(const SystemLayout& layout, const std::vector<std::size_t>& order) {
  const auto& fs = layout.factors();
  const std::size_t k = fs.size();
  std::vector<int> old_stride(k, 1);
  for (std::size_t i = k; i-- > 1;) old_stride[i - 1] = old_stride[i] * fs[i].dim;
  const int total = layout.total_dim();
  std::vector<int> map(total);
  std::vector<int> digit(k, 0);  // digits in new order
  for (int idx = 0; idx < total; ++idx) {
    int old = 0;
    for (std::size_t p = 0; p < k; ++p) old += digit[p] * old_stride[order[p]];
    map[idx] = old;
    for (std::size_t p = k; p-- > 0;) {
      if (++digit[p] < fs[order[p]].dim) break;
      digit[p] = 0;
    }
  }
  return map;
}

}  // namespace

Operator permute(const Operator& op, std::span<const std::string> order) {
  const auto& layout = op.layout();
  if (order.size() != layout.size())
    throw LayoutError("permutation must list every factor of " + layout.to_string());
  std::vector<std::size_t> idx;
  idx.reserve(order.size());
  std::set<std::size_t> seen;
  for (const auto& l : order) {
    idx.push_back(layout.index_of(l));
    if (!seen.insert(idx.back()).second) throw LayoutError("label repeated in permutation");
  }
  bool trivial = true;
  for (std::size_t i = 0; i < idx.size(); ++i) trivial = trivial && idx[i] == i;
  if (trivial) return op;

  const auto map = permutation_map(layout, idx);
  const int d = op.dim();
  Matrix out(d, d);
  const Matrix& m = op.matrix();
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) out(r, c) = m(map[r], map[c]);
  return {layout.select(order), std::move(out)};
}

Operator align(const Operator& op, const SystemLayout& target) {
  const auto labels = target.labels();
  Operator out = permute(op, labels);
  if (!(out.layout() == target))
    throw LayoutError("cannot align " + op.layout().to_string() + " to " + target.to_string());
  return out;
}

Operator partial_trace(const Operator& op, std::span<const std::string> over) {
  const auto& layout = op.layout();
  const SystemLayout kept = layout.without(over);
  std::vector<std::string> order = kept.labels();
  order.insert(order.end(), over.begin(), over.end());
  const Operator p = permute(op, order);
  const int dk = kept.total_dim();
  const int dt = layout.total_dim() / dk;
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = p.matrix();
  for (int j = 0; j < dk; ++j)
    for (int i = 0; i < dk; ++i) {
      Complex s = 0.0;
      for (int t = 0; t < dt; ++t) s += m(i * dt + t, j * dt + t);
      out(i, j) = s;
    }
  return {kept, std::move(out)};
}

Operator partial_trace(const Operator& op, std::initializer_list<std::string> over) {
  const std::vector<std::string> v(over);
  return partial_trace(op, std::span<const std::string>(v));
}

Operator relabel(const Operator& op, const SystemLayout& layout) { return op.with_layout(layout); }

Operator conjugate_on(const Operator& x, const Matrix& u, std::span<const std::string> labels) {
  const auto& layout = x.layout();
  const SystemLayout rest = layout.without(labels);
  if (u.rows() != layout.dim_of(labels) || u.cols() != u.rows())
    throw LayoutError("unitary does not match the dimension of the selected factors");
  std::vector<std::string> order(labels.begin(), labels.end());
  const auto rest_labels = rest.labels();
  order.insert(order.end(), rest_labels.begin(), rest_labels.end());
  const Operator p = permute(x, order);
  const int dr = rest.total_dim();
  Matrix full = dr == 1 ? u : linalg::kron(u, Matrix::Identity(dr, dr));
  const Operator conj{p.layout(), full * p.matrix() * full.adjoint()};
  return align(conj, layout);
}

// ---------------------------------------------------------------------------
// norms

double schatten_norm(const Matrix& m, Schatten p) {
  if (p == Schatten::Two) return m.norm();
  const double scale = 1.0 + (m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  RealVector s;
  if (linalg::hermitian_distance(m) <= 1e-14 * scale) {
    s = linalg::eigvalsh(m).cwiseAbs();
  } else {
    s = linalg::singular_values(m);
  }
  return p == Schatten::One ? s.sum() : (s.size() ? s.maxCoeff() : 0.0);
}

double schatten_norm(const Operator& op, Schatten p) { return schatten_norm(op.matrix(), p); }

double fidelity(const Operator& rho, const Operator& sigma, double tol) {
  if (rho.dim() != sigma.dim()) throw LayoutError("fidelity of operators of different sizes");
  if (!rho.is_hermitian(tol) || !sigma.is_hermitian(tol))
    throw DomainError("fidelity requires Hermitian inputs");
  const Matrix a = linalg::sqrt_psd(rho.matrix(), tol);
  const Matrix b = linalg::sqrt_psd(sigma.matrix(), tol);
  return linalg::singular_values(a * b).sum();
}

double generalized_fidelity(const Operator& rho, const Operator& sigma, double tol) {
  const double tr_r = rho.real_trace();
  const double tr_s = sigma.real_trace();
  if (tr_r > 1.0 + tol || tr_s > 1.0 + tol)
    throw DomainError("generalized fidelity requires subnormalized states");
  const double f = fidelity(rho, sigma, tol);
  return f + std::sqrt(std::max(0.0, 1.0 - tr_r) * std::max(0.0, 1.0 - tr_s));
}

double purified_distance(const Operator& rho, const Operator& sigma, double tol) {
  const double f = std::min(1.0, generalized_fidelity(rho, sigma, tol));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

double trace_distance(const Operator& a, const Operator& b) {
  return schatten_norm((a - b).matrix(), Schatten::One);
}

double von_neumann_entropy(const Operator& rho) {
  const RealVector ev = linalg::eigvalsh(rho.matrix());
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-300) h -= ev(i) * std::log2(ev(i));
  return h;
}

// ---------------------------------------------------------------------------
// Choi-Jamiolkowski calculus

Operator choi_of_map(const LinearMap& apply, const SystemLayout& in_layout) {
  const int din = in_layout.total_dim();
  const SystemLayout in_copy = in_layout.with_suffix(kChoiSuffix);
  Matrix choi;
  SystemLayout out_layout;
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      const Operator img = apply(basis_op(in_layout, i, j));
      if (i == 0 && j == 0) {
        out_layout = img.layout();
        choi = Matrix::Zero(img.dim() * din, img.dim() * din);
      } else if (!(img.layout() == out_layout)) {
        throw LayoutError("map produced inconsistent output layouts");
      }
      const int dout = img.dim();
      for (int o = 0; o < dout; ++o)
        for (int p = 0; p < dout; ++p) choi(o * din + i, p * din + j) = img.matrix()(o, p) / static_cast<double>(din);
    }
  }
  return {out_layout.concat(in_copy), std::move(choi)};
}

Channel channel_from_map(const LinearMap& apply, const SystemLayout& in_layout) {
  Operator choi = choi_of_map(apply, in_layout);
  const std::size_t n_out = choi.layout().size() - in_layout.size();
  std::vector<SystemLayout::Factor> out(choi.layout().factors().begin(),
                                        choi.layout().factors().begin() + static_cast<long>(n_out));
  return {in_layout, SystemLayout(std::move(out)), std::move(choi)};
}

Operator to_choi(const Channel& t) { return t.choi(); }

namespace {

// T(|i><j|) = d_in * (block (i, j) of the Choi matrix).
Matrix image_of_basis(const Channel& t, int i, int j) {
  const int din = t.in_dim();
  const int dout = t.out_dim();
  const Matrix& c = t.choi().matrix();
  Matrix img(dout, dout);
  for (int o = 0; o < dout; ++o)
    for (int p = 0; p < dout; ++p) img(o, p) = static_cast<double>(din) * c(o * din + i, p * din + j);
  return img;
}

}  // namespace

Operator apply_channel(const Channel& t, const Operator& x) {
  const auto& in = t.in_layout();
  const auto in_labels = in.labels();
  for (const auto& f : in.factors()) {
    if (!x.layout().contains(f.label))
      throw LayoutError("input factor '" + f.label + "' missing from " + x.layout().to_string());
    if (x.layout().dim_of(f.label) != f.dim)
      throw LayoutError("input factor '" + f.label + "' has mismatched dimension");
  }
  const SystemLayout rest = x.layout().without(in_labels);
  std::vector<std::string> order = in_labels;
  const auto rest_labels = rest.labels();
  order.insert(order.end(), rest_labels.begin(), rest_labels.end());
  const Operator xp = permute(x, order);

  const int din = t.in_dim();
  const int dout = t.out_dim();
  const int dr = rest.total_dim();
  SystemLayout out_layout = t.out_layout().concat(rest);
  Matrix y = Matrix::Zero(dout * dr, dout * dr);
  const Matrix& xm = xp.matrix();
  for (int i = 0; i < din; ++i) {
    for (int j = 0; j < din; ++j) {
      const Matrix block = xm.block(i * dr, j * dr, dr, dr);
      if (block.cwiseAbs().maxCoeff() == 0.0) continue;
      const Matrix img = image_of_basis(t, i, j);
      y += linalg::kron(img, block);
    }
  }
  return {std::move(out_layout), std::move(y)};
}

Operator apply_adjoint(const Channel& t, const Operator& y) {
  if (!y.layout().same_shape(t.out_layout()))
    throw LayoutError("adjoint input must live on the output layout " + t.out_layout().to_string());
  const int din = t.in_dim();
  Matrix out(din, din);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) out(i, j) = (image_of_basis(t, i, j).adjoint() * y.matrix()).trace();
  return {t.in_layout(), std::move(out)};
}

SystemLayout tilde(const SystemLayout& layout) { return layout.with_suffix("~"); }

Channel choi_preimage(const Operator& rho, std::span<const std::string> a_labels, double tol) {
  if (!rho.is_hermitian(tol)) throw DomainError("Choi preimage requires a Hermitian operator");
  const SystemLayout a = rho.layout().select(a_labels);
  const SystemLayout r = rho.layout().without(a_labels);
  std::vector<std::string> order = r.labels();
  order.insert(order.end(), a_labels.begin(), a_labels.end());
  const Operator swapped = permute(rho, order);
  const SystemLayout in = tilde(a);
  return {in, r, swapped.with_layout(r.concat(in.with_suffix(kChoiSuffix)))};
}

// ---------------------------------------------------------------------------
// standard channels

Channel identity_channel(const SystemLayout& in, const SystemLayout& out) {
  if (in.total_dim() != out.total_dim()) throw LayoutError("identity channel needs equal dimensions");
  const SystemLayout in_copy = in.with_suffix(kChoiSuffix);
  return {in, out, max_entangled(out, in_copy)};
}

Channel partial_trace_channel(const SystemLayout& in, std::span<const std::string> traced,
                              const SystemLayout& out) {
  const std::vector<std::string> tr(traced.begin(), traced.end());
  return {in, out, choi_of_map([&](const Operator& x) { return relabel(partial_trace(x, tr), out); }, in)};
}

Channel unitary_channel(const Matrix& u, const SystemLayout& in, const SystemLayout& out) {
  if (u.rows() != in.total_dim() || out.total_dim() != in.total_dim())
    throw LayoutError("unitary channel dimension mismatch");
  return {in, out, choi_of_map([&](const Operator& x) { return Operator(out, u * x.matrix() * u.adjoint()); }, in)};
}

Channel completely_depolarizing(const SystemLayout& in, const SystemLayout& out) {
  const Operator pi = completely_mixed(out);
  return {in, out, choi_of_map([&](const Operator& x) { return pi * x.trace(); }, in)};
}

Channel dephasing_channel(const SystemLayout& in, const SystemLayout& out) {
  if (out.total_dim() != in.total_dim()) throw LayoutError("dephasing channel dimension mismatch");
  return {in, out, choi_of_map([&](const Operator& x) {
            Matrix d = x.matrix().diagonal().asDiagonal();
            return Operator(out, std::move(d));
          }, in)};
}

Channel zero_channel(const SystemLayout& in, const SystemLayout& out) {
  return {in, out, zero(out.concat(in.with_suffix(kChoiSuffix)))};
}

}  // namespace qmath
}  // namespace qdec
