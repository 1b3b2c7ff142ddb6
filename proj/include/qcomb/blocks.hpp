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

#ifndef QCOMB_BLOCKS_HPP
#define QCOMB_BLOCKS_HPP

#include <vector>

#include "qcomb/chain_cache.hpp"

namespace qcomb {

// Chains and sizes for one (task, d, n) instance. The comb Choi matrix
// lives on P (x) I^n (x) O^n (x) F with n+1 teeth; tooth i receives the
// i-th leg of the right chain (P, O_1..O_n) and emits the i-th leg of
// the left chain (I_1..I_n, F).
struct TaskGeometry {
  Task task = Task::Invert;
  int d = 2;
  int n = 1;
  ChainCache* L = nullptr;
  ChainCache* R = nullptr;

  static TaskGeometry make(Workspace& ws, Task task, int d, int n) {
    auto [sl, sr] = chain_for_task(task, d, n);
    TaskGeometry g;
    g.task = task;
    g.d = d;
    g.n = n;
    g.L = &ws.chain(sl);
    g.R = &ws.chain(sr);
    return g;
  }

  int teeth() const { return n + 1; }
  const BrattelDiagram& BL() const { return L->diagram(); }
  const BrattelDiagram& BR() const { return R->diagram(); }
  int num_left(int level) const { return static_cast<int>(BL().levels[level].size()); }
  int num_right(int level) const { return static_cast<int>(BR().levels[level].size()); }
};

// One Hermitian matrix per (lambda, mu) pair at a given level, indexed by
// (path-to-lambda, path-to-mu) pairs: row = t * m_mu + q.
struct BlockSet {
  int level = 0;
  std::vector<MatrixXcd> blocks;  // indexed lam * num_right(level) + mu

  MatrixXcd& at(const TaskGeometry& g, int lam, int mu) {
    return blocks[lam * g.num_right(level) + mu];
  }
  const MatrixXcd& at(const TaskGeometry& g, int lam, int mu) const {
    return blocks[lam * g.num_right(level) + mu];
  }
};

inline BlockSet zero_blocks(const TaskGeometry& g, int level) {
  BlockSet b;
  b.level = level;
  int nl = g.num_left(level), nr = g.num_right(level);
  b.blocks.resize(nl * nr);
  for (int lam = 0; lam < nl; ++lam)
    for (int mu = 0; mu < nr; ++mu) {
      int rows = g.BL().num_paths(level, lam) * g.BR().num_paths(level, mu);
      b.blocks[lam * nr + mu] = MatrixXcd::Zero(rows, rows);
    }
  return b;
}

// Blocks of the fully depolarizing comb (discard and reprepare at every
// tooth): C = 1 / d^(n+1), i.e. C^{lambda mu} = d_lambda d_mu / d^(n+1) * 1.
inline BlockSet depolarizing_blocks(const TaskGeometry& g) {
  int top = g.teeth();
  BlockSet b = zero_blocks(g, top);
  double dn = static_cast<double>(ipow(g.d, top));
  for (int lam = 0; lam < g.num_left(top); ++lam)
    for (int mu = 0; mu < g.num_right(top); ++mu) {
      double w = static_cast<double>(g.BL().dims[top][lam]) *
                 static_cast<double>(g.BR().dims[top][mu]) / dn;
      b.at(g, lam, mu) = w * MatrixXcd::Identity(b.at(g, lam, mu).rows(),
                                                 b.at(g, lam, mu).cols());
    }
  return b;
}

// One step of the traced comb recursion:
//   C_{i-1}^{lp,mp} = (1/d) sum_{lc,mc} (R (x) R) C_i^{lc,mc} (R (x) R)^+.
inline BlockSet reduce_once(const TaskGeometry& g, const BlockSet& cur) {
  int lev = cur.level;
  QCOMB_REQUIRE(lev >= 1, "reduce_once: already at level 0");
  BlockSet out = zero_blocks(g, lev - 1);
  const auto& BL = g.BL();
  const auto& BR = g.BR();
  for (int lc = 0; lc < g.num_left(lev); ++lc)
    for (int mc = 0; mc < g.num_right(lev); ++mc) {
      const MatrixXcd& src = cur.at(g, lc, mc);
      int mQ = BR.num_paths(lev, mc);
      int mT = BL.num_paths(lev, lc);
      for (int t = 0; t < mT; ++t) {
        auto [lp, tp] = BL.truncate_path(lev, lc, t);
        for (int q = 0; q < mQ; ++q) {
          auto [mp, qp] = BR.truncate_path(lev, mc, q);
          for (int t2 = 0; t2 < mT; ++t2) {
            auto [lp2, tp2] = BL.truncate_path(lev, lc, t2);
            if (lp2 != lp) continue;
            for (int q2 = 0; q2 < mQ; ++q2) {
              auto [mp2, qp2] = BR.truncate_path(lev, mc, q2);
              if (mp2 != mp) continue;
              int mQp = BR.num_paths(lev - 1, mp);
              out.at(g, lp, mp)(tp * mQp + qp, tp2 * mQp + qp2) +=
                  src(t * mQ + q, t2 * mQ + q2) / static_cast<double>(g.d);
            }
          }
        }
      }
    }
  return out;
}

inline std::vector<BlockSet> all_levels(const TaskGeometry& g, const BlockSet& top) {
  std::vector<BlockSet> levels(g.teeth() + 1);
  levels[g.teeth()] = top;
  for (int i = g.teeth(); i >= 1; --i) levels[i - 1] = reduce_once(g, levels[i]);
  return levels;
}

struct CombResidual {
  double linear = 0.0;      // worst matrix-equality violation
  double trace_c0 = 0.0;    // |C_0 - 1|
  double psd = 0.0;         // most negative eigenvalue of a top block (as >= 0)
  double hermiticity = 0.0;

  double max_linear() const { return std::max(linear, trace_c0); }
};

// Residuals of the reduced comb conditions: for every tooth i, every
// lambda_{i-1} in the left chain and mu_i in the right chain,
//   sum_{lc} (R (x) 1) C_i^{lc, mu_i} (R (x) 1)^+
//     = sum_{mp} (d_{mu_i} / d_{mp}) (1 (x) A) C_{i-1}^{lambda_{i-1}, mp} (1 (x) A)^+,
// plus C_0 = 1 and positive semidefiniteness of the top blocks.
inline CombResidual comb_conditions_residual(const TaskGeometry& g,
                                             const BlockSet& top) {
  CombResidual res;
  auto levels = all_levels(g, top);
  const auto& BL = g.BL();
  const auto& BR = g.BR();

  for (const auto& blk : top.blocks) {
    res.hermiticity = std::max(res.hermiticity, herm_residual(blk));
    if (blk.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm(blk));
      res.psd = std::max(res.psd, std::max(0.0, -es.eigenvalues()(0)));
    }
  }

  for (int i = 1; i <= g.teeth(); ++i) {
    for (int lp = 0; lp < g.num_left(i - 1); ++lp) {
      int mT = BL.num_paths(i - 1, lp);
      for (int mc = 0; mc < g.num_right(i); ++mc) {
        int mQ = BR.num_paths(i, mc);
        int dim = mT * mQ;
        MatrixXcd lhs = MatrixXcd::Zero(dim, dim);
        for (int lc : BL.children[i - 1][lp]) {
          const MatrixXcd& src = levels[i].at(g, lc, mc);
          int mQc = mQ;
          for (int t = 0; t < mT; ++t) {
            int te = BL.extend_path(i - 1, lp, t, lc);
            for (int t2 = 0; t2 < mT; ++t2) {
              int te2 = BL.extend_path(i - 1, lp, t2, lc);
              for (int q = 0; q < mQ; ++q)
                for (int q2 = 0; q2 < mQ; ++q2)
                  lhs(t * mQ + q, t2 * mQ + q2) +=
                      src(te * mQc + q, te2 * mQc + q2);
            }
          }
        }
        MatrixXcd rhs = MatrixXcd::Zero(dim, dim);
        double dmu = static_cast<double>(BR.dims[i][mc]);
        for (int q = 0; q < mQ; ++q) {
          auto [mp, qp] = BR.truncate_path(i, mc, q);
          for (int q2 = 0; q2 < mQ; ++q2) {
            auto [mp2, qp2] = BR.truncate_path(i, mc, q2);
            if (mp != mp2) continue;
            double ratio = dmu / static_cast<double>(BR.dims[i - 1][mp]);
            const MatrixXcd& src = levels[i - 1].at(g, lp, mp);
            int mQp = BR.num_paths(i - 1, mp);
            for (int t = 0; t < mT; ++t)
              for (int t2 = 0; t2 < mT; ++t2)
                rhs(t * mQ + q, t2 * mQ + q2) +=
                    ratio * src(t * mQp + qp, t2 * mQp + qp2);
          }
        }
        res.linear = std::max(res.linear, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  res.trace_c0 = std::abs(levels[0].blocks[0](0, 0) - 1.0);
  return res;
}

}  // namespace qcomb

#endif  // QCOMB_BLOCKS_HPP
