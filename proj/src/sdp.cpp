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

#include "qdec/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace qdec::sdp {

// ---------------------------------------------------------------------------
// Problem

Problem::Problem(std::vector<int> block_dims, Sense sense) : dims_(std::move(block_dims)), sense_(sense) {
  if (dims_.empty()) throw ParameterError("SDP needs at least one block");
  for (int d : dims_) {
    if (d < 1) throw ParameterError("SDP block dimensions must be positive");
    if (d > 4096) throw SizeError("SDP block dimension exceeds 4096");
    c_.push_back(Matrix::Zero(d, d));
  }
}

int Problem::total_dim() const {
  int n = 0;
  for (int d : dims_) n += d;
  return n;
}

void Problem::set_objective(int block, const Matrix& c) {
  if (block < 0 || block >= n_blocks()) throw ParameterError("objective block out of range");
  const int d = dims_[static_cast<std::size_t>(block)];
  if (c.rows() != d || c.cols() != d) throw LayoutError("objective block has the wrong size");
  c_[static_cast<std::size_t>(block)] = c;
}

int Problem::add_constraint(double rhs) {
  if (n_constraints() >= kMaxConstraints) {
    std::ostringstream msg;
    msg << "SDP exceeds " << kMaxConstraints << " equality constraints";
    throw SizeError(msg.str());
  }
  a_.emplace_back();
  rhs_.conservativeResize(rhs_.size() + 1);
  rhs_(rhs_.size() - 1) = rhs;
  return n_constraints() - 1;
}

void Problem::check_index(int con, int block, int row, int col) const {
  if (con < 0 || con >= n_constraints()) throw ParameterError("constraint index out of range");
  if (block < 0 || block >= n_blocks()) throw ParameterError("block index out of range");
  const int d = dims_[static_cast<std::size_t>(block)];
  if (row < 0 || row >= d || col < 0 || col >= d) throw ParameterError("entry index out of range");
}

void Problem::add_entry(int con, int block, int row, int col, Complex value) {
  check_index(con, block, row, col);
  a_[static_cast<std::size_t>(con)].push_back({block, row, col, value});
}

void Problem::add_real_part(int con, int block, int p, int q, Complex coeff) {
  if (p == q) {
    add_entry(con, block, p, p, coeff.real());
  } else {
    add_entry(con, block, q, p, 0.5 * coeff);
    add_entry(con, block, p, q, 0.5 * std::conj(coeff));
  }
}

void Problem::add_imag_part(int con, int block, int p, int q, double coeff) {
  if (p == q) throw ParameterError("imaginary part of a diagonal entry is zero");
  add_entry(con, block, p, q, Complex(0.0, 0.5 * coeff));
  add_entry(con, block, q, p, Complex(0.0, -0.5 * coeff));
}

void Problem::add_trace(int con, int block, double coeff) {
  check_index(con, block, 0, 0);
  for (int i = 0; i < dims_[static_cast<std::size_t>(block)]; ++i) add_entry(con, block, i, i, coeff);
}

void Problem::add_hermitian(int con, int block, const Matrix& a, double coeff) {
  const int d = dims_[static_cast<std::size_t>(block)];
  if (a.rows() != d || a.cols() != d) throw LayoutError("constraint block has the wrong size");
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r)
      if (a(r, c) != Complex(0.0)) add_entry(con, block, r, c, coeff * a(r, c));
}

RealVector Problem::apply(const std::vector<Matrix>& x) const {
  RealVector out(n_constraints());
  for (int i = 0; i < n_constraints(); ++i) {
    Complex s = 0.0;
    for (const auto& e : a_[static_cast<std::size_t>(i)]) s += e.value * x[static_cast<std::size_t>(e.block)](e.col, e.row);
    out(i) = s.real();
  }
  return out;
}

std::vector<Matrix> Problem::adjoint(const RealVector& y) const {
  std::vector<Matrix> out;
  for (int d : dims_) out.push_back(Matrix::Zero(d, d));
  for (int i = 0; i < n_constraints(); ++i) {
    if (y(i) == 0.0) continue;
    for (const auto& e : a_[static_cast<std::size_t>(i)]) out[static_cast<std::size_t>(e.block)](e.row, e.col) += y(i) * e.value;
  }
  return out;
}

void Problem::validate(double tol) const {
  for (const auto& c : c_)
    if (linalg::hermitian_distance(c) > tol) throw DomainError("SDP objective is not Hermitian");
  for (int i = 0; i < n_constraints(); ++i) {
    std::map<std::tuple<int, int, int>, Complex> acc;
    for (const auto& e : a_[static_cast<std::size_t>(i)]) acc[{e.block, e.row, e.col}] += e.value;
    for (const auto& [key, v] : acc) {
      const auto [b, r, c] = key;
      const auto it = acc.find({b, c, r});
      const Complex partner = it == acc.end() ? Complex(0.0) : it->second;
      if (std::abs(v - std::conj(partner)) > tol) {
        std::ostringstream msg;
        msg << "SDP constraint " << i << " is not Hermitian";
        throw DomainError(msg.str());
      }
    }
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::MaxIter: return "max_iter";
    case Status::Infeasible: return "infeasible";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// interior point method

namespace {

using Blocks = std::vector<Matrix>;

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].adjoint().cwiseProduct(b[k].transpose())).sum().real();
  return s;
}

double frob(const Blocks& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

struct Scaling {
  Matrix g;      // G, with G^{-1} X G^{-*} = G^* Z G = diag(v)
  Matrix g_inv;  // G^{-1}
  Matrix w;      // G G^*
  RealVector v;
  Matrix lx;     // Cholesky factor of X
  Matrix lz;     // Cholesky factor of Z
};

bool cholesky(const Matrix& m, Matrix& l) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  l = llt.matrixL();
  return true;
}

bool nt_scaling(const Matrix& x, const Matrix& z, Scaling& s) {
  if (!cholesky(x, s.lx) || !cholesky(z, s.lz)) return false;
  const Matrix lz_lx = s.lx.adjoint() * z * s.lx;
  const auto e = linalg::eigh(lz_lx);
  if (e.values.minCoeff() <= 0.0) return false;
  s.v = e.values.cwiseSqrt();
  const RealVector inv_sqrt = s.v.cwiseSqrt().cwiseInverse();
  const RealVector sqrt_v = s.v.cwiseSqrt();
  s.g = s.lx * e.vectors * inv_sqrt.asDiagonal();
  const Matrix lx_inv = s.lx.triangularView<Eigen::Lower>().solve(Matrix::Identity(x.rows(), x.cols()));
  s.g_inv = sqrt_v.asDiagonal() * e.vectors.adjoint() * lx_inv;
  s.w = s.g * s.g.adjoint();
  return true;
}

// Largest step alpha with x + alpha dx >= 0, given x = l l^*.
double max_step(const Matrix& l, const Matrix& dx) {
  const Matrix t = l.triangularView<Eigen::Lower>().solve(dx);
  const Matrix s = l.triangularView<Eigen::Lower>().solve(t.adjoint()).adjoint();
  const double lmin = linalg::eigvalsh(s).minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

class Schur {
 public:
  bool factor(const RealMatrix& m) {
    llt_.compute(m);
    if (llt_.info() == Eigen::Success) {
      use_ldlt_ = false;
      return true;
    }
    const double reg = 1e-13 * std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    llt_.compute(m + reg * RealMatrix::Identity(m.rows(), m.cols()));
    if (llt_.info() == Eigen::Success) {
      use_ldlt_ = false;
      return true;
    }
    ldlt_.compute(m);
    use_ldlt_ = true;
    return ldlt_.info() == Eigen::Success;
  }
  RealVector solve(const RealVector& r) const { return use_ldlt_ ? RealVector(ldlt_.solve(r)) : RealVector(llt_.solve(r)); }

 private:
  Eigen::LLT<RealMatrix> llt_;
  Eigen::LDLT<RealMatrix> ldlt_;
  bool use_ldlt_ = false;
};

// M_ij = Re tr(A_i W A_j W).
RealMatrix schur_matrix(const Problem& p, const std::vector<Scaling>& sc) {
  const int m = p.n_constraints();
  RealMatrix mm(m, m);
  Blocks t(static_cast<std::size_t>(p.n_blocks()));
  std::vector<bool> touched(static_cast<std::size_t>(p.n_blocks()));
  for (int j = 0; j < m; ++j) {
    std::fill(touched.begin(), touched.end(), false);
    for (const auto& e : p.entries(j)) {
      const auto b = static_cast<std::size_t>(e.block);
      const Matrix& w = sc[b].w;
      if (!touched[b]) {
        t[b] = Matrix::Zero(w.rows(), w.cols());
        touched[b] = true;
      }
      t[b].noalias() += e.value * w.col(e.row) * w.row(e.col);
    }
    for (int i = j; i < m; ++i) {
      Complex s = 0.0;
      for (const auto& e : p.entries(i)) {
        const auto b = static_cast<std::size_t>(e.block);
        if (touched[b]) s += e.value * t[b](e.col, e.row);
      }
      mm(i, j) = s.real();
      mm(j, i) = s.real();
    }
  }
  return mm;
}

struct Direction {
  Blocks dx;
  Blocks dz;
  RealVector dy;
};

Direction search_direction(const Problem& p, const std::vector<Scaling>& sc, const Schur& schur, const RealVector& rp,
                           const Blocks& rd, const Blocks& rc) {
  const std::size_t nb = sc.size();
  Blocks wrdw(nb);
  for (std::size_t b = 0; b < nb; ++b) wrdw[b] = sc[b].w * rd[b] * sc[b].w;
  const RealVector rhs = rp - p.apply(rc) + p.apply(wrdw);
  Direction d;
  d.dy = schur.solve(rhs);
  const Blocks aty = p.adjoint(d.dy);
  d.dz.resize(nb);
  d.dx.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    d.dz[b] = linalg::hermitian_part(rd[b] - aty[b]);
    d.dx[b] = linalg::hermitian_part(rc[b] - sc[b].w * d.dz[b] * sc[b].w);
  }
  return d;
}

Solution solve_native(const Problem& p, const Options& opts) {
  p.validate();
  const int m = p.n_constraints();
  const std::size_t nb = static_cast<std::size_t>(p.n_blocks());
  const double sign = p.sense() == Sense::Minimize ? 1.0 : -1.0;
  Blocks c = p.objective();
  for (auto& cb : c) cb *= sign;
  const RealVector& b = p.rhs();
  const double n = p.total_dim();

  double max_ratio = 0.0, max_anorm = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (const auto& e : p.entries(i)) s += std::norm(e.value);
    const double an = std::sqrt(s);
    max_anorm = std::max(max_anorm, an);
    max_ratio = std::max(max_ratio, (1.0 + std::abs(b(i))) / (1.0 + an));
  }
  const double cnorm = frob(c);
  const double xi = std::max({10.0, std::sqrt(n), n * max_ratio});
  const double eta = std::max({10.0, std::sqrt(n), max_anorm, cnorm});

  Blocks x(nb), z(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const int d = p.block_dims()[k];
    x[k] = xi * Matrix::Identity(d, d);
    z[k] = eta * Matrix::Identity(d, d);
  }
  RealVector y = RealVector::Zero(m);
  const double bnorm = b.norm();

  Solution sol;
  std::vector<Scaling> sc(nb);
  Schur schur;
  for (int iter = 0;; ++iter) {
    const RealVector rp = b - p.apply(x);
    const Blocks aty = p.adjoint(y);
    Blocks rd(nb);
    for (std::size_t k = 0; k < nb; ++k) rd[k] = linalg::hermitian_part(c[k] - z[k] - aty[k]);
    const double pobj = inner(c, x);
    const double dobj = b.dot(y);
    const double mu = inner(x, z) / n;
    const double pinf = rp.norm() / (1.0 + bnorm);
    const double dinf = frob(rd) / (1.0 + cnorm);
    const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    sol.primal_value = sign * pobj;
    sol.dual_value = sign * dobj;
    sol.gap = std::abs(pobj - dobj);
    sol.rel_gap = rel_gap;
    sol.primal_residual = pinf;
    sol.dual_residual = dinf;
    sol.complementarity = mu;
    sol.iterations = iter;
    sol.X = x;
    sol.Z = z;
    sol.y = sign * y;

    if (pinf < opts.feas_tol && dinf < opts.feas_tol && rel_gap < opts.gap_tol) {
      sol.status = Status::Optimal;
      return sol;
    }
    if (y.lpNorm<Eigen::Infinity>() > 1e10 || frob(x) > 1e10 * (1.0 + xi)) {
      sol.status = Status::Infeasible;
      return sol;
    }
    if (iter >= opts.max_iter) {
      sol.status = Status::MaxIter;
      return sol;
    }

    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) ok = nt_scaling(x[k], z[k], sc[k]);
    if (!ok || !schur.factor(schur_matrix(p, sc))) {
      sol.status = Status::MaxIter;
      return sol;
    }

    // predictor
    Blocks rc(nb);
    for (std::size_t k = 0; k < nb; ++k) rc[k] = -x[k];
    Direction pred = search_direction(p, sc, schur, rp, rd, rc);
    double ap = 1.0, ad = 1.0;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(sc[k].lx, pred.dx[k]));
      ad = std::min(ad, max_step(sc[k].lz, pred.dz[k]));
    }
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      const Matrix xa = x[k] + ap * pred.dx[k];
      const Matrix za = z[k] + ad * pred.dz[k];
      mu_aff += (xa.adjoint().cwiseProduct(za.transpose())).sum().real();
    }
    mu_aff /= n;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // corrector
    for (std::size_t k = 0; k < nb; ++k) {
      const Scaling& s = sc[k];
      const Matrix dxt = s.g_inv * pred.dx[k] * s.g_inv.adjoint();
      const Matrix dzt = s.g.adjoint() * pred.dz[k] * s.g;
      Matrix r = -(dxt * dzt + dzt * dxt);
      for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, i) += 2.0 * (sigma * mu - s.v(i) * s.v(i));
      for (Eigen::Index j = 0; j < r.cols(); ++j)
        for (Eigen::Index i = 0; i < r.rows(); ++i) r(i, j) /= s.v(i) + s.v(j);
      rc[k] = s.g * r * s.g.adjoint();
    }
    const Direction dir = search_direction(p, sc, schur, rp, rd, rc);
    double apm = std::numeric_limits<double>::infinity(), adm = apm;
    for (std::size_t k = 0; k < nb; ++k) {
      apm = std::min(apm, max_step(sc[k].lx, dir.dx[k]));
      adm = std::min(adm, max_step(sc[k].lz, dir.dz[k]));
    }
    const double gamma = 0.9 + 0.09 * std::min({ap, ad, 1.0});
    const double step_p = std::min(1.0, gamma * apm);
    const double step_d = std::min(1.0, gamma * adm);
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] = linalg::hermitian_part(x[k] + step_p * dir.dx[k]);
      z[k] = linalg::hermitian_part(z[k] + step_d * dir.dz[k]);
    }
    y += step_d * dir.dy;
  }
}

// [[Re M, -Im M], [Im M, Re M]]
Matrix embed(const Matrix& m) {
  const auto d = m.rows();
  Matrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = m.real().cast<Complex>();
  out.bottomRightCorner(d, d) = m.real().cast<Complex>();
  out.topRightCorner(d, d) = (-m.imag()).cast<Complex>();
  out.bottomLeftCorner(d, d) = m.imag().cast<Complex>();
  return out;
}

Matrix unembed(const Matrix& m) {
  const auto d = m.rows() / 2;
  const RealMatrix re = 0.5 * (m.topLeftCorner(d, d).real() + m.bottomRightCorner(d, d).real());
  const RealMatrix im = 0.5 * (m.bottomLeftCorner(d, d).real() - m.topRightCorner(d, d).real());
  Matrix out(d, d);
  out.real() = re;
  out.imag() = im;
  return out;
}

Solution solve_embedded(const Problem& p, const Options& opts) {
  std::vector<int> dims;
  for (int d : p.block_dims()) dims.push_back(2 * d);
  Problem q(dims, p.sense());
  for (int k = 0; k < p.n_blocks(); ++k) q.set_objective(k, 0.5 * embed(p.objective()[static_cast<std::size_t>(k)]));
  for (int i = 0; i < p.n_constraints(); ++i) {
    const int con = q.add_constraint(p.rhs()(i));
    for (const auto& e : p.entries(i)) {
      const int d = p.block_dims()[static_cast<std::size_t>(e.block)];
      const double re = 0.5 * e.value.real(), im = 0.5 * e.value.imag();
      if (re != 0.0) {
        q.add_entry(con, e.block, e.row, e.col, re);
        q.add_entry(con, e.block, e.row + d, e.col + d, re);
      }
      if (im != 0.0) {
        q.add_entry(con, e.block, e.row, e.col + d, -im);
        q.add_entry(con, e.block, e.row + d, e.col, im);
      }
    }
  }
  Options inner_opts = opts;
  inner_opts.real_embedding = false;
  Solution s = solve_native(q, inner_opts);
  for (auto& xb : s.X) xb = unembed(xb);
  for (auto& zb : s.Z) zb = 2.0 * unembed(zb);
  return s;
}

}  // namespace

Solution solve(const Problem& p, const Options& opts) {
  if (opts.feas_tol <= 0.0 || opts.gap_tol <= 0.0 || opts.max_iter < 1)
    throw ParameterError("SDP tolerances must be positive");
  return opts.real_embedding ? solve_embedded(p, opts) : solve_native(p, opts);
}

// ---------------------------------------------------------------------------
// diamond norm
//
// For Hermiticity-preserving T with unnormalized Choi matrix J on out x in,
//   ||T||_diamond = max <J, W>  s.t.  -I x rho <= W <= I x rho,  tr rho = 1.
// With S1 = I x rho - W and S2 = I x rho + W the program is in standard form:
// minimize <blockdiag(J/2, -J/2), (S1, S2)> with S1 + S2 constrained to
// I_out x R, tr R = 2.

DiamondResult diamond_norm_bounds(const Channel& t, const Options& opts) {
  if (!t.is_hermiticity_preserving()) throw DomainError("diamond norm requires a Hermiticity-preserving map");
  const int n_out = t.out_dim();
  const int n_in = t.in_dim();
  const int n = n_out * n_in;
  if (n > kMaxDiamondChoiDim) {
    std::ostringstream msg;
    msg << "diamond norm refuses Choi dimension " << n << " > " << kMaxDiamondChoiDim
        << "; use the choi_trace_bounds estimator of the designs module";
    throw SizeError(msg.str());
  }
  const long long n_con = static_cast<long long>(n_out * n_out - 1) * n_in * n_in + 1;
  if (n_con > kMaxConstraints) {
    std::ostringstream msg;
    msg << "diamond norm program needs " << n_con << " constraints (limit " << kMaxConstraints
        << "); use the choi_trace_bounds estimator of the designs module";
    throw SizeError(msg.str());
  }

  const Matrix j = linalg::hermitian_part(t.choi().matrix()) * static_cast<double>(n_in);
  DiamondResult res;
  if (j.cwiseAbs().maxCoeff() == 0.0) {
    res.status = Status::Optimal;
    return res;
  }

  Problem p({n, n});
  p.set_objective(0, 0.5 * j);
  p.set_objective(1, -0.5 * j);
  auto both = [&](int con, auto&& add) {
    add(con, 0);
    add(con, 1);
  };
  for (int a = 0; a < n_out; ++a) {
    for (int bb = a + 1; bb < n_out; ++bb) {
      for (int i = 0; i < n_in; ++i) {
        for (int k = 0; k < n_in; ++k) {
          const int r = a * n_in + i, c = bb * n_in + k;
          both(p.add_constraint(0.0), [&](int con, int blk) { p.add_real_part(con, blk, r, c); });
          both(p.add_constraint(0.0), [&](int con, int blk) { p.add_imag_part(con, blk, r, c); });
        }
      }
    }
  }
  for (int a = 0; a + 1 < n_out; ++a) {
    for (int i = 0; i < n_in; ++i) {
      for (int k = i; k < n_in; ++k) {
        const int r0 = a * n_in + i, c0 = a * n_in + k;
        const int r1 = r0 + n_in, c1 = c0 + n_in;
        both(p.add_constraint(0.0), [&](int con, int blk) {
          p.add_real_part(con, blk, r0, c0);
          p.add_real_part(con, blk, r1, c1, -1.0);
        });
        if (k != i) {
          both(p.add_constraint(0.0), [&](int con, int blk) {
            p.add_imag_part(con, blk, r0, c0);
            p.add_imag_part(con, blk, r1, c1, -1.0);
          });
        }
      }
    }
  }
  const int tr_con = p.add_constraint(2.0 * n_out);
  both(tr_con, [&](int con, int blk) { p.add_trace(con, blk); });

  const Solution s = solve(p, opts);
  res.status = s.status;
  res.iterations = s.iterations;

  // Lower bound: trace norm at the input state recovered from S1 + S2.
  const SystemLayout out_l = t.out_layout();
  const SystemLayout choi_l = t.choi().layout();
  const Operator sum{choi_l, linalg::hermitian_part(s.X[0] + s.X[1])};
  Matrix rho = qmath::partial_trace(sum, out_l.labels()).matrix();
  const auto e = linalg::eigh(rho);
  rho = linalg::spectral_apply(e, [](double v) { return std::max(v, 0.0); });
  rho /= rho.trace().real();
  const Matrix sq = linalg::kron(Matrix::Identity(n_out, n_out), linalg::sqrt_psd(rho));
  res.lower = qmath::schatten_norm(Matrix(sq * j * sq), qmath::Schatten::One);

  // Upper bound: the dual point, shifted along the trace multiplier (whose
  // constraint matrix is the identity) until Z = C - A^*(y) is PSD.
  RealVector y = s.y;
  const std::vector<Matrix> aty = p.adjoint(y);
  double lmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k)
    lmin = std::min(lmin, linalg::eigvalsh(p.objective()[static_cast<std::size_t>(k)] - aty[static_cast<std::size_t>(k)]).minCoeff());
  const double shift = std::max(0.0, -lmin);
  res.upper = -p.rhs().dot(y) + p.rhs()(tr_con) * shift;
  res.upper = std::max(res.upper, res.lower);
  res.value = 0.5 * (res.lower + res.upper);
  return res;
}

double diamond_norm(const Channel& t, const Options& opts) {
  const DiamondResult r = diamond_norm_bounds(t, opts);
  if (r.upper - r.lower > 1e-6 * std::max(1.0, r.upper)) {
    std::ostringstream msg;
    msg << "diamond norm interval [" << r.lower << ", " << r.upper << "] wider than 1e-6 (status "
        << to_string(r.status) << ")";
    throw NumericError(msg.str());
  }
  return r.value;
}

}  // namespace qdec::sdp
