// Copyright 2025 The qcomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCOMB_CHOI_VERIFY_HPP
#define QCOMB_CHOI_VERIFY_HPP

#include <algorithm>
#include <numeric>
#include <random>

#include "qcomb/blocks.hpp"
#include "qcomb/haar.hpp"
#include "qcomb/tensor_ops.hpp"

namespace qcomb {

// Full Choi matrix on (C^d)^{(x) 2(n+1)} with the fixed leg order
//   (I_1 .. I_n, F, P, O_1 .. O_n).
// The first n+1 legs carry the left chain, the last n+1 the right chain.
struct ChoiMatrix {
  int d = 2;
  int n = 1;
  MatrixXcd mat;

  int legs() const { return 2 * (n + 1); }
  int leg_I(int i) const { return i - 1; }       // i in 1..n
  int leg_F() const { return n; }
  int leg_P() const { return n + 1; }
  int leg_O(int i) const { return n + 1 + i; }   // i in 1..n
};

inline int64_t full_choi_dim(int d, int n) { return ipow(d, 2 * (n + 1)); }

inline void guard_desk_scale(int d, int n, int64_t limit = 4096) {
  QCOMB_REQUIRE(full_choi_dim(d, n) <= limit,
                "full-space verification refused: dim "
                << full_choi_dim(d, n) << " exceeds " << limit);
}

// C = sum C^{lm}_{(tq),(t'q')} (E^l_{tt'} / d_l) (x) (Etilde^m_{qq'} / d_m).
inline ChoiMatrix choi_from_blocks(const TaskGeometry& g, const BlockSet& top,
                                   int64_t dim_limit = 4096) {
  guard_desk_scale(g.d, g.n, dim_limit);
  int topLevel = g.teeth();
  int half = static_cast<int>(ipow(g.d, topLevel));
  ChoiMatrix C;
  C.d = g.d;
  C.n = g.n;
  C.mat = MatrixXcd::Zero(half * half, half * half);
  for (int lam = 0; lam < g.num_left(topLevel); ++lam) {
    int mT = g.BL().num_paths(topLevel, lam);
    double dl = static_cast<double>(g.BL().dims[topLevel][lam]);
    for (int mu = 0; mu < g.num_right(topLevel); ++mu) {
      int mQ = g.BR().num_paths(topLevel, mu);
      double dm = static_cast<double>(g.BR().dims[topLevel][mu]);
      const MatrixXcd& blk = top.at(g, lam, mu);
      if (blk.cwiseAbs().maxCoeff() < 1e-300) continue;
      for (int t = 0; t < mT; ++t)
        for (int t2 = 0; t2 < mT; ++t2) {
          // R-side operator: sum_{q q'} c_{(tq),(t'q')} Etilde_{qq'}
          MatrixXcd coef(mQ, mQ);
          for (int q = 0; q < mQ; ++q)
            for (int q2 = 0; q2 < mQ; ++q2)
              coef(q, q2) = blk(t * mQ + q, t2 * mQ + q2);
          if (coef.cwiseAbs().maxCoeff() < 1e-300) continue;
          MatrixXcd rop = MatrixXcd::Zero(half, half);
          for (int q = 0; q < mQ; ++q)
            for (int q2 = 0; q2 < mQ; ++q2) {
              if (std::abs(coef(q, q2)) < 1e-300) continue;
              rop += coef(q, q2) * g.R->materialize_unit(topLevel, mu, q, q2);
            }
          MatrixXcd e = g.L->materialize_unit(topLevel, lam, t, t2);
          C.mat += kron(e, rop) / (dl * dm);
        }
    }
  }
  return C;
}

// Project a full Choi matrix back onto the matrix-unit basis.
inline BlockSet blocks_from_choi(const TaskGeometry& g, const ChoiMatrix& C) {
  int topLevel = g.teeth();
  BlockSet out = zero_blocks(g, topLevel);
  for (int lam = 0; lam < g.num_left(topLevel); ++lam) {
    int mT = g.BL().num_paths(topLevel, lam);
    for (int mu = 0; mu < g.num_right(topLevel); ++mu) {
      int mQ = g.BR().num_paths(topLevel, mu);
      MatrixXcd& blk = out.at(g, lam, mu);
      for (int t = 0; t < mT; ++t)
        for (int t2 = 0; t2 < mT; ++t2) {
          MatrixXcd e = g.L->materialize_unit(topLevel, lam, t2, t);   // E_{t't}
          for (int q = 0; q < mQ; ++q)
            for (int q2 = 0; q2 < mQ; ++q2) {
              MatrixXcd f = g.R->materialize_unit(topLevel, mu, q2, q);
              blk(t * mQ + q, t2 * mQ + q2) = (kron(e, f) * C.mat).trace();
            }
        }
    }
  }
  return out;
}

struct FullCombReport {
  double min_eigenvalue = 0.0;
  double hermiticity = 0.0;
  double worst_marginal = 0.0;  // max over teeth of the partial-trace identity
  double trace_c0 = 0.0;
  double max_residual() const {
    return std::max({hermiticity, worst_marginal, trace_c0,
                     std::max(0.0, -min_eigenvalue)});
  }
};

// Direct check of the comb conditions on the full Choi matrix, tooth by
// tooth. Works on the raw matrix; independent of the reduced machinery.
inline FullCombReport check_comb_conditions(const ChoiMatrix& C) {
  FullCombReport rep;
  int d = C.d, n = C.n;
  rep.hermiticity = herm_residual(C.mat);
  {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm(C.mat));
    rep.min_eigenvalue = es.eigenvalues()(0);
  }
  // Reorder legs from (I^n, F, P, O^n) to interleaved per-tooth order
  // (L_1, .., L_{n+1}, R_1, .., R_{n+1}) -- already in that layout: the
  // left chain occupies legs 0..n and the right chain legs n+1..2n+1.
  MatrixXcd cur = C.mat;
  int teeth = n + 1;
  for (int i = teeth; i >= 1; --i) {
    // legs of cur: [L_1..L_i, R_1..R_i]
    int m = 2 * i;
    MatrixXcd traced = partial_trace(cur, m, d, {i - 1});  // drop L_i
    MatrixXcd next = partial_trace(traced, m - 1, d, {m - 2}) / d;  // drop R_i
    MatrixXcd expect = kron(next, MatrixXcd::Identity(d, d));
    rep.worst_marginal = std::max(rep.worst_marginal, (traced - expect).norm());
    cur = next;
  }
  rep.trace_c0 = std::abs(cur(0, 0) - 1.0);
  return rep;
}

// Group action on the full Choi legs: V on I-legs, U on O-legs; the F and
// P legs carry conjugates for transposition and plain factors for
// inversion (F takes the V side, P the U side).
inline MatrixXcd choi_group_action(Task task, int d, int n, const MatrixXcd& u,
                                   const MatrixXcd& v) {
  std::vector<MatrixXcd> f;
  for (int i = 0; i < n; ++i) f.push_back(v);
  f.push_back(task == Task::Transpose ? v.conjugate().eval() : v);
  f.push_back(task == Task::Transpose ? u.conjugate().eval() : u);
  for (int i = 0; i < n; ++i) f.push_back(u);
  return kron_all(f);
}

inline double check_symmetry(const ChoiMatrix& C, Task task, int samples,
                             uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    MatrixXcd u = haar_unitary(C.d, rng);
    MatrixXcd v = haar_unitary(C.d, rng);
    MatrixXcd act = choi_group_action(task, C.d, C.n, u, v);
    worst = std::max(worst, (C.mat * act - act * C.mat).norm());
  }
  return worst;
}

namespace detail {

// Embed an operator acting on a subset of legs (given in the operator's
// own factor order) into the full space.
inline MatrixXcd embed_on_legs(const MatrixXcd& op, const std::vector<int>& pos,
                               int m, int d) {
  int dim = static_cast<int>(ipow(d, m));
  int k = static_cast<int>(pos.size());
  int dsub = static_cast<int>(ipow(d, k));
  QCOMB_REQUIRE(op.rows() == dsub && op.cols() == dsub, "embed_on_legs: size");
  auto st = leg_strides(m, d);
  std::vector<int> rest;
  for (int l = 0; l < m; ++l)
    if (std::find(pos.begin(), pos.end(), l) == pos.end()) rest.push_back(l);
  int drest = static_cast<int>(ipow(d, m - k));
  MatrixXcd out = MatrixXcd::Zero(dim, dim);
  std::vector<int> sd(k), sc(k), rd(m - k);
  for (int rs = 0; rs < dsub; ++rs) {
    int t = rs;
    for (int a = k - 1; a >= 0; --a) { sd[a] = t % d; t /= d; }
    for (int cs = 0; cs < dsub; ++cs) {
      cxd val = op(rs, cs);
      if (val == 0.0) continue;
      int u = cs;
      for (int a = k - 1; a >= 0; --a) { sc[a] = u % d; u /= d; }
      for (int rr = 0; rr < drest; ++rr) {
        int w = rr;
        for (int a = m - k - 1; a >= 0; --a) { rd[a] = w % d; w /= d; }
        int row = 0, col = 0;
        for (int a = 0; a < k; ++a) {
          row += sd[a] * st[pos[a]];
          col += sc[a] * st[pos[a]];
        }
        for (int a = 0; a < m - k; ++a) {
          row += rd[a] * st[rest[a]];
          col += rd[a] * st[rest[a]];
        }
        out(row, col) += val;
      }
    }
  }
  return out;
}

// Partial transpose of an operator on k legs, on one chosen leg.
inline MatrixXcd partial_transpose_leg(const MatrixXcd& op, int leg, int k, int d) {
  auto st = leg_strides(k, d);
  int dim = static_cast<int>(op.rows());
  MatrixXcd out(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      int rl = (r / st[leg]) % d, cl = (c / st[leg]) % d;
      int r2 = r + (cl - rl) * st[leg];
      int c2 = c + (rl - cl) * st[leg];
      out(r2, c2) = op(r, c);
    }
  return out;
}

inline MatrixXd gram_pinv(const MatrixXd& G) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(G);
  VectorXd ev = es.eigenvalues();
  double cut = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  VectorXd inv = VectorXd::Zero(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) inv(i) = 1.0 / ev(i);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace detail

// Exact figure-of-merit operator Omega on the full space, built without
// the matrix-unit machinery: Omega = (1/d^2) * Haar average of
// |w(U)><w(U)| with |w(U)> = (x)_i |conj(U)>>_{I_i O_i} (x) |f(U)>>_{P F}.
// The average is the orthogonal projection onto the commutant of the
// active-leg action, spanned by (partially transposed) permutations; the
// Gram matrix d^{cycles} gives the exact projection coefficients.
inline MatrixXcd omega_full(Task task, int d, int n, int64_t dim_limit = 4096) {
  guard_desk_scale(d, n, dim_limit);
  int m = 2 * (n + 1);
  int dim = static_cast<int>(full_choi_dim(d, n));
  ChoiMatrix meta;
  meta.d = d;
  meta.n = n;

  VectorXcd phi = VectorXcd::Zero(dim);
  auto st = leg_strides(m, d);
  for (int idx = 0; idx < dim; ++idx) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i)
      ok = ((idx / st[meta.leg_I(i)]) % d) == ((idx / st[meta.leg_O(i)]) % d);
    if (ok) ok = ((idx / st[meta.leg_P()]) % d) == ((idx / st[meta.leg_F()]) % d);
    if (ok) phi(idx) = 1.0;
  }
  MatrixXcd X = phi * phi.adjoint();

  // Active legs, in the operator order (P, O_1, .., O_n).
  std::vector<int> active = {meta.leg_P()};
  for (int i = 1; i <= n; ++i) active.push_back(meta.leg_O(i));
  int k = n + 1;

  auto perms = detail::all_permutations(k);
  int np = static_cast<int>(perms.size());
  MatrixXd gram(np, np);
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b)
      gram(a, b) = std::pow(static_cast<double>(d),
                            perm_cycles(perm_compose(perm_inverse(perms[a]), perms[b])));
  MatrixXd ginv = detail::gram_pinv(gram);

  std::vector<MatrixXcd> basis(np);
  for (int a = 0; a < np; ++a) {
    MatrixXcd b = perm_op(perms[a], d);
    if (task == Task::Transpose) b = detail::partial_transpose_leg(b, 0, k, d);
    basis[a] = b;
  }

  // M_b = Tr_active[(B_b^+ (x) 1) X] on the passive legs (I^n, F).
  std::vector<MatrixXcd> mb(np);
  for (int b = 0; b < np; ++b) {
    MatrixXcd full = detail::embed_on_legs(basis[b].adjoint(), active, m, d);
    mb[b] = partial_trace(full * X, m, d, active);
  }
  MatrixXcd omega = MatrixXcd::Zero(dim, dim);
  for (int a = 0; a < np; ++a) {
    MatrixXcd na = MatrixXcd::Zero(mb[0].rows(), mb[0].cols());
    for (int b = 0; b < np; ++b) na += ginv(a, b) * mb[b];
    omega += kron(na, basis[a]);
  }
  return omega / static_cast<double>(d * d);
}

struct McResult {
  double mean = 0.0;
  double stderr_ = 0.0;
  double min_pointwise = 0.0;
  int samples = 0;
};

// Monte-Carlo estimate of the average channel fidelity of the comb
// against the target f(U): F(U) = <w(U)| C |w(U)> / d^2.
inline McResult haar_fidelity_mc(const ChoiMatrix& C, Task task, int samples,
                                 uint64_t seed) {
  int d = C.d, n = C.n;
  int m = C.legs();
  int dim = static_cast<int>(C.mat.rows());
  auto st = leg_strides(m, d);
  std::mt19937_64 rng(seed);
  double sum = 0.0, sumsq = 0.0, lo = 2.0;
  VectorXcd w(dim);
  for (int s = 0; s < samples; ++s) {
    MatrixXcd u = haar_unitary(d, rng);
    MatrixXcd ubar = u.conjugate();
    MatrixXcd f = (task == Task::Transpose) ? u.transpose().eval()
                                            : u.adjoint().eval();
    for (int idx = 0; idx < dim; ++idx) {
      cxd v = f((idx / st[C.leg_F()]) % d, (idx / st[C.leg_P()]) % d);
      for (int i = 1; i <= n && v != 0.0; ++i)
        v *= ubar((idx / st[C.leg_O(i)]) % d, (idx / st[C.leg_I(i)]) % d);
      w(idx) = v;
    }
    double fu = std::real(w.dot(C.mat * w)) / (d * d);
    sum += fu;
    sumsq += fu * fu;
    lo = std::min(lo, fu);
  }
  McResult r;
  r.samples = samples;
  r.mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - r.mean * r.mean);
  r.stderr_ = std::sqrt(var / samples);
  r.min_pointwise = lo;
  return r;
}

}  // namespace qcomb

#endif  // QCOMB_CHOI_VERIFY_HPP
