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

#ifndef QCOMB_COMB_SDP_HPP
#define QCOMB_COMB_SDP_HPP

#include <map>

#include "qcomb/objective.hpp"
#include "qcomb/sdp_solver.hpp"

namespace qcomb {

// Trace-affine constraint on the complex top-level blocks:
//   sum_j Tr(A_j C_j) = rhs, with Hermitian coefficient matrices.
struct HermRow {
  std::map<int, MatrixXcd> A;
  double rhs = 0.0;
};

namespace combdetail {

// All vertex chains from (level, v) up to the top of the diagram.
inline void collect_suffixes(const BrattelDiagram& B, int level, int v,
                             std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
  if (level == B.top()) {
    out.push_back(cur);
    return;
  }
  for (int c : B.children[level][v]) {
    cur.push_back(c);
    collect_suffixes(B, level + 1, c, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> suffixes(const BrattelDiagram& B, int level,
                                              int v) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  collect_suffixes(B, level, v, cur, out);
  return out;
}

// Top path index reached by extending path (level, v, t) along a suffix.
inline int extend_along(const BrattelDiagram& B, int level, int v, int t,
                        const std::vector<int>& suffix) {
  int lv = level, vv = v, tt = t;
  for (int c : suffix) {
    tt = B.extend_path(lv, vv, tt, c);
    QCOMB_REQUIRE(tt >= 0, "extend_along: missing edge");
    vv = c;
    ++lv;
  }
  return tt;
}

// Accumulator for one complex-linear functional of the top blocks,
// f(C) = sum coef * C_j[r, c]; materialized as per-block matrices M_j
// with f(C) = sum_j Tr(M_j C_j).
struct RowAccum {
  std::map<int, MatrixXcd> M;

  void add(const TaskGeometry& g, int block, int r, int c, cxd coef) {
    auto it = M.find(block);
    if (it == M.end()) {
      int rows = static_cast<int>(
          g.BL().num_paths(g.teeth(), block / g.num_right(g.teeth())) *
          g.BR().num_paths(g.teeth(), block % g.num_right(g.teeth())));
      it = M.emplace(block, MatrixXcd::Zero(rows, rows)).first;
    }
    it->second(c, r) += coef;  // Tr(M C): M[c,r] multiplies C[r,c]
  }
};

// Adds the substituted entry of C_i^{(lc,mc)}[(S,Q),(S',Q')] (levels
// below the top are eliminated through the linear trace recursion).
inline void add_level_entry(const TaskGeometry& g, RowAccum& row, int level,
                            int lc, int S, int Sp, int mc, int Q, int Qp,
                            cxd coef) {
  const auto& BL = g.BL();
  const auto& BR = g.BR();
  int top = g.teeth();
  double w = 1.0 / static_cast<double>(ipow(g.d, top - level));
  auto sufL = suffixes(BL, level, lc);
  auto sufR = suffixes(BR, level, mc);
  int nr = g.num_right(top);
  for (const auto& sl : sufL) {
    int lamTop = sl.empty() ? lc : sl.back();
    int s1 = extend_along(BL, level, lc, S, sl);
    int s2 = extend_along(BL, level, lc, Sp, sl);
    for (const auto& sr : sufR) {
      int muTop = sr.empty() ? mc : sr.back();
      int q1 = extend_along(BR, level, mc, Q, sr);
      int q2 = extend_along(BR, level, mc, Qp, sr);
      int mq = BR.num_paths(top, muTop);
      row.add(g, lamTop * nr + muTop, s1 * mq + q1, s2 * mq + q2, coef * w);
    }
  }
}

}  // namespace combdetail

// Comb conditions as trace-affine rows on the top-level blocks. For every
// tooth i, left label at level i-1 and right label at level i, the matrix
// equation
//   sum_{lc} (R (x) 1) C_i (R (x) 1)^+  =  sum_{mp} (d_mu/d_mp) (1 (x) A) C_{i-1} (1 (x) A)^+
// contributes one Hermitian row per real degree of freedom of its upper
// triangle; C_0 = 1 adds the normalization row.
inline std::vector<HermRow> comb_constraint_rows(const TaskGeometry& g) {
  using combdetail::RowAccum;
  const auto& BL = g.BL();
  const auto& BR = g.BR();
  int top = g.teeth();
  std::vector<HermRow> rows;

  // C_0 = 1.
  {
    RowAccum acc;
    combdetail::add_level_entry(g, acc, 0, 0, 0, 0, 0, 0, 0, 1.0);
    HermRow r;
    r.rhs = 1.0;
    for (auto& [j, M] : acc.M) r.A[j] = herm(M);
    rows.push_back(std::move(r));
  }

  for (int i = 1; i <= top; ++i) {
    for (int lp = 0; lp < g.num_left(i - 1); ++lp) {
      int mT = BL.num_paths(i - 1, lp);
      for (int mc = 0; mc < g.num_right(i); ++mc) {
        int mQ = BR.num_paths(i, mc);
        int dim = mT * mQ;
        double dmu = static_cast<double>(BR.dims[i][mc]);
        for (int u = 0; u < dim; ++u) {
          for (int v = u; v < dim; ++v) {
            int T = u / mQ, Q = u % mQ;
            int T2 = v / mQ, Q2 = v % mQ;
            RowAccum acc;
            // LHS: sum over left children of lp at level i.
            for (int lc : BL.children[i - 1][lp]) {
              int te = BL.extend_path(i - 1, lp, T, lc);
              int te2 = BL.extend_path(i - 1, lp, T2, lc);
              combdetail::add_level_entry(g, acc, i, lc, te, te2, mc, Q, Q2, 1.0);
            }
            // RHS: both right paths must share the parent and last edge.
            auto [mp, qp] = BR.truncate_path(i, mc, Q);
            auto [mp2, qp2] = BR.truncate_path(i, mc, Q2);
            if (mp == mp2) {
              double ratio = dmu / static_cast<double>(BR.dims[i - 1][mp]);
              combdetail::add_level_entry(g, acc, i - 1, lp, T, T2, mp, qp, qp2,
                                          -ratio);
            }
            // Split into real rows with Hermitian coefficients.
            MatrixXcd dummy;
            HermRow re, im;
            double nre = 0.0, nim = 0.0;
            for (auto& [j, M] : acc.M) {
              MatrixXcd h = herm(M);
              MatrixXcd a = (M - M.adjoint()) / cxd(0.0, 2.0);
              if (h.norm() > 1e-13) {
                re.A[j] = h;
                nre = std::max(nre, h.cwiseAbs().maxCoeff());
              }
              if (a.norm() > 1e-13) {
                im.A[j] = a;
                nim = std::max(nim, a.cwiseAbs().maxCoeff());
              }
            }
            if (nre > 1e-13) {
              for (auto& [j, A] : re.A) A /= nre;
              rows.push_back(std::move(re));
            }
            if (nim > 1e-13) {
              for (auto& [j, A] : im.A) A /= nim;
              rows.push_back(std::move(im));
            }
          }
        }
      }
    }
  }
  return rows;
}

// Real symmetric embedding of a Hermitian matrix.
inline MatrixXd real_embed(const MatrixXcd& H) {
  int s = static_cast<int>(H.rows());
  MatrixXd out(2 * s, 2 * s);
  out.topLeftCorner(s, s) = H.real();
  out.bottomRightCorner(s, s) = H.real();
  out.topRightCorner(s, s) = -H.imag();
  out.bottomLeftCorner(s, s) = H.imag();
  return out;
}

inline MatrixXcd real_unembed(const MatrixXd& X) {
  int s = static_cast<int>(X.rows()) / 2;
  MatrixXcd C(s, s);
  C.real() = 0.5 * (X.topLeftCorner(s, s) + X.bottomRightCorner(s, s));
  C.imag() = 0.5 * (X.bottomLeftCorner(s, s) - X.topRightCorner(s, s));
  return C;
}

struct AssembledSDP {
  SDPProblem prob;  // real, minimization form: fidelity = -<C, X>
  std::vector<int> complex_dims;
  ObjectiveConvention conv;
  int num_rows_generated = 0;
};

inline AssembledSDP assemble_sdp(const TaskGeometry& g) {
  AssembledSDP out;
  ObjectiveBlocks obj = objective_blocks(g);
  out.conv = obj.conv;
  int nblocks = static_cast<int>(obj.W.size());
  QCOMB_REQUIRE(nblocks > 0, "assemble_sdp: empty diagrams");
  for (int j = 0; j < nblocks; ++j) {
    int s = static_cast<int>(obj.W[j].rows());
    out.complex_dims.push_back(s);
    out.prob.dims.push_back(2 * s);
    out.prob.objective.push_back(-0.5 * real_embed(obj.W[j]));
  }
  auto rows = comb_constraint_rows(g);
  out.num_rows_generated = static_cast<int>(rows.size());
  for (const auto& r : rows) {
    SDPConstraint c;
    c.rhs = 2.0 * r.rhs;
    for (const auto& [j, A] : r.A) c.terms.push_back({j, real_embed(A)});
    out.prob.constraints.push_back(std::move(c));
  }
  return out;
}

inline BlockSet recover_blocks(const TaskGeometry& g, const AssembledSDP& asdp,
                               const SDPSolution& sol) {
  BlockSet b = zero_blocks(g, g.teeth());
  for (size_t j = 0; j < sol.X.size(); ++j) b.blocks[j] = real_unembed(sol.X[j]);
  (void)asdp;
  return b;
}

struct CombSDPResult {
  double fidelity = 0.0;
  SDPSolution sol;
  BlockSet blocks;
  AssembledSDP assembled;
};

inline CombSDPResult solve_comb_sdp(const TaskGeometry& g, double tol = 1e-9,
                                    int max_iter = 200, bool verbose = false) {
  CombSDPResult r;
  r.assembled = assemble_sdp(g);
  SDPOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  opt.verbose = verbose;
  r.sol = solve_sdp(r.assembled.prob, opt);
  r.fidelity = -r.sol.pobj;
  r.blocks = recover_blocks(g, r.assembled, r.sol);
  return r;
}

}  // namespace qcomb

#endif  // QCOMB_COMB_SDP_HPP
