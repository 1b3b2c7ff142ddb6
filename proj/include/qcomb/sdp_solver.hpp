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

#ifndef QCOMB_SDP_SOLVER_HPP
#define QCOMB_SDP_SOLVER_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "qcomb/common.hpp"

namespace qcomb {

// Real symmetric block-diagonal SDP in standard primal form:
//   min <C, X>  s.t.  <A_k, X> = b_k,  X >= 0.
// The dual is  max b^T y  s.t.  S = C - sum_k y_k A_k >= 0.
// Constraint matrices are stored per touched block only.

struct SDPTerm {
  int block = 0;
  MatrixXd A;
};

struct SDPConstraint {
  std::vector<SDPTerm> terms;
  double rhs = 0.0;
};

struct SDPProblem {
  std::vector<int> dims;
  std::vector<MatrixXd> objective;  // C, one (possibly zero) matrix per block
  std::vector<SDPConstraint> constraints;

  int total_dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
  }
};

enum class SDPStatus { Optimal, MaxIter, NumericalFailure, InfeasibleSuspect };

inline const char* sdp_status_name(SDPStatus s) {
  switch (s) {
    case SDPStatus::Optimal: return "optimal";
    case SDPStatus::MaxIter: return "max_iter";
    case SDPStatus::NumericalFailure: return "numerical_failure";
    case SDPStatus::InfeasibleSuspect: return "infeasible_suspect";
  }
  return "?";
}

struct SDPSolution {
  std::vector<MatrixXd> X, S;
  VectorXd y;
  double pobj = 0.0, dobj = 0.0;
  double gap = 0.0, primal_res = 0.0, dual_res = 0.0;
  int iters = 0;
  int dropped_constraints = 0;
  SDPStatus status = SDPStatus::NumericalFailure;
};

struct SDPOptions {
  double tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

namespace sdpdetail {

inline MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Largest step alpha such that X + alpha * D stays PSD (0.98 to boundary
// applied by the caller). X must be positive definite.
inline double max_step(const MatrixXd& X, const MatrixXd& D) {
  Eigen::LLT<MatrixXd> llt(X);
  if (llt.info() != Eigen::Success) return 0.0;
  MatrixXd L = llt.matrixL();
  MatrixXd B = L.triangularView<Eigen::Lower>().solve(D);
  B = L.triangularView<Eigen::Lower>().solve(B.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(B), Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  if (lmin >= -1e-14) return 1e30;
  return -1.0 / lmin;
}

inline MatrixXd sqrt_psd(const MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(M));
  VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

inline MatrixXd invsqrt_pd(const MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(M));
  VectorXd ev = es.eigenvalues();
  VectorXd inv(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    inv(i) = 1.0 / std::sqrt(std::max(ev(i), 1e-300));
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace sdpdetail

// Rank-revealing preprocessing: drop linearly dependent constraint rows
// (pivoted Cholesky on the constraint Gram matrix). Returns the kept row
// indices; inconsistent dependent rows raise an error.
inline std::vector<int> independent_rows(const SDPProblem& p, double rel_tol = 1e-12) {
  int m = static_cast<int>(p.constraints.size());
  MatrixXd G = MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      double s = 0.0;
      for (const auto& tk : p.constraints[k].terms)
        for (const auto& tl : p.constraints[l].terms)
          if (tk.block == tl.block) s += (tk.A.array() * tl.A.array()).sum();
      G(k, l) = G(l, k) = s;
    }
  // Pivoted Cholesky with relative threshold.
  VectorXd diag = G.diagonal();
  double thresh = rel_tol * std::max(1e-300, diag.maxCoeff());
  std::vector<int> kept;
  MatrixXd Lfac(m, m);  // rows of the factor, in kept order
  std::vector<char> used(m, 0);
  for (int step = 0; step < m; ++step) {
    int piv = -1;
    double best = thresh;
    for (int k = 0; k < m; ++k)
      if (!used[k] && diag(k) > best) {
        best = diag(k);
        piv = k;
      }
    if (piv < 0) break;
    used[piv] = 1;
    int r = static_cast<int>(kept.size());
    // column of G restricted minus projections
    VectorXd col(m);
    for (int k = 0; k < m; ++k) col(k) = G(k, piv);
    for (int j = 0; j < r; ++j) col -= Lfac.col(j) * Lfac(piv, j);
    double pivval = std::sqrt(std::max(col(piv), 1e-300));
    Lfac.col(r) = col / pivval;
    kept.push_back(piv);
    for (int k = 0; k < m; ++k)
      if (!used[k]) diag(k) = std::max(0.0, diag(k) - Lfac(k, r) * Lfac(k, r));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

inline SDPSolution solve_sdp(const SDPProblem& input, const SDPOptions& opt = {}) {
  // Preprocess: drop dependent rows.
  SDPProblem p;
  p.dims = input.dims;
  p.objective = input.objective;
  std::vector<int> keep = independent_rows(input);
  for (int k : keep) p.constraints.push_back(input.constraints[k]);
  int dropped = static_cast<int>(input.constraints.size() - keep.size());

  int nb = static_cast<int>(p.dims.size());
  int m = static_cast<int>(p.constraints.size());
  int ntot = p.total_dim();

  VectorXd b(m);
  for (int k = 0; k < m; ++k) b(k) = p.constraints[k].rhs;

  // Per-block list of touching constraints (for the Schur complement).
  std::vector<std::vector<std::pair<int, const MatrixXd*>>> touch(nb);
  for (int k = 0; k < m; ++k)
    for (const auto& t : p.constraints[k].terms)
      touch[t.block].push_back({k, &t.A});

  auto op_a = [&](const std::vector<MatrixXd>& M) {
    VectorXd out = VectorXd::Zero(m);
    for (int k = 0; k < m; ++k)
      for (const auto& t : p.constraints[k].terms)
        out(k) += (t.A.array() * M[t.block].array()).sum();
    return out;
  };
  auto op_at = [&](const VectorXd& y) {
    std::vector<MatrixXd> out(nb);
    for (int j = 0; j < nb; ++j) out[j] = MatrixXd::Zero(p.dims[j], p.dims[j]);
    for (int k = 0; k < m; ++k)
      for (const auto& t : p.constraints[k].terms)
        out[t.block] += y(k) * t.A;
    return out;
  };

  double normC = 1.0, normB = 1.0;
  for (int j = 0; j < nb; ++j) normC = std::max(normC, p.objective[j].norm());
  normB = std::max(1.0, b.cwiseAbs().maxCoeff());

  SDPSolution sol;
  sol.dropped_constraints = dropped;
  sol.y = VectorXd::Zero(m);
  sol.X.resize(nb);
  sol.S.resize(nb);
  double tau = std::max(10.0, std::sqrt(static_cast<double>(ntot)) * normB);
  double tauS = std::max(10.0, normC);
  for (int j = 0; j < nb; ++j) {
    sol.X[j] = tau * MatrixXd::Identity(p.dims[j], p.dims[j]);
    sol.S[j] = tauS * MatrixXd::Identity(p.dims[j], p.dims[j]);
  }

  double prev_pres = 1e300;
  int stall = 0;
  SDPSolution best = sol;
  double best_worst = 1e300;
  int best_iter = 0;

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    VectorXd rp = b - op_a(sol.X);
    std::vector<MatrixXd> aty = op_at(sol.y);
    std::vector<MatrixXd> Rd(nb);
    double mu = 0.0;
    for (int j = 0; j < nb; ++j) {
      Rd[j] = p.objective[j] - sol.S[j] - aty[j];
      mu += (sol.X[j].array() * sol.S[j].array()).sum();
    }
    mu /= std::max(1, ntot);

    sol.pobj = 0.0;
    for (int j = 0; j < nb; ++j)
      sol.pobj += (p.objective[j].array() * sol.X[j].array()).sum();
    sol.dobj = b.dot(sol.y);
    double rdnorm = 0.0;
    for (int j = 0; j < nb; ++j) rdnorm = std::max(rdnorm, Rd[j].norm());
    sol.primal_res = rp.cwiseAbs().maxCoeff() / (1.0 + normB);
    sol.dual_res = rdnorm / (1.0 + normC);
    sol.gap = std::abs(sol.pobj - sol.dobj) /
              (1.0 + std::abs(sol.pobj) + std::abs(sol.dobj));
    sol.iters = iter;
    if (opt.verbose)
      std::fprintf(stderr, "it %3d  pobj %+.9e dobj %+.9e gap %.2e pres %.2e dres %.2e mu %.2e\n",
                   iter, sol.pobj, sol.dobj, sol.gap, sol.primal_res, sol.dual_res, mu);
    double worst = std::max({sol.gap, sol.primal_res, sol.dual_res});
    if (worst < best_worst) {
      best_worst = worst;
      best = sol;
      best_iter = iter;
    }
    if (sol.gap <= opt.tol && sol.primal_res <= opt.tol && sol.dual_res <= opt.tol) {
      sol.status = SDPStatus::Optimal;
      return sol;
    }
    // Return the best iterate once the run stops making progress.
    if (iter - best_iter > 15) {
      best.status = SDPStatus::MaxIter;
      return best;
    }
    // crude divergence heuristic
    if (sol.primal_res > 0.9 * prev_pres && sol.primal_res > 1e-4) {
      if (++stall > 40) {
        sol.status = SDPStatus::InfeasibleSuspect;
        return sol;
      }
    } else {
      stall = 0;
    }
    prev_pres = sol.primal_res;
    // Once the dual residual is at roundoff, treat it as exactly zero:
    // multiplying FP noise by S^{-1} would otherwise poison the primal
    // system near convergence.
    if (sol.dual_res < 1e-13)
      for (int j = 0; j < nb; ++j) Rd[j].setZero();

    // Scaled constraint stacks H_k = S^{-1/2} A_k X^{1/2} per block.
    std::vector<MatrixXd> Sinv(nb), Sinvh(nb), Xh(nb);
    for (int j = 0; j < nb; ++j) {
      Sinvh[j] = sdpdetail::invsqrt_pd(sol.S[j]);
      Sinv[j] = Sinvh[j] * Sinvh[j];
      Xh[j] = sdpdetail::sqrt_psd(sol.X[j]);
    }
    MatrixXd M = MatrixXd::Zero(m, m);
    for (int j = 0; j < nb; ++j) {
      int kj = static_cast<int>(touch[j].size());
      if (kj == 0) continue;
      int n2 = p.dims[j] * p.dims[j];
      MatrixXd Z(kj, n2);
      for (int r = 0; r < kj; ++r) {
        MatrixXd H = Sinvh[j] * (*touch[j][r].second) * Xh[j];
        Z.row(r) = Eigen::Map<VectorXd>(H.data(), n2);
      }
      MatrixXd Mj = Z * Z.transpose();
      for (int r = 0; r < kj; ++r)
        for (int c = 0; c < kj; ++c)
          M(touch[j][r].first, touch[j][c].first) += Mj(r, c);
    }
    M.diagonal().array() += 1e-12;  // static regularization
    Eigen::LLT<MatrixXd> Mf(M);
    if (Mf.info() != Eigen::Success) {
      M.diagonal().array() += 1e-8 * M.diagonal().maxCoeff();
      Mf.compute(M);
      if (Mf.info() != Eigen::Success) {
        sol.status = SDPStatus::NumericalFailure;
        return sol;
      }
    }

    auto herm_sxw = [&](int j, const MatrixXd& Y) {
      // Herm( S^{-1} Y X ) for block j
      MatrixXd Z = Sinv[j] * Y * sol.X[j];
      return sdpdetail::sym(Z);
    };

    // Predictor (affine scaling, mu_target = 0).
    std::vector<MatrixXd> base(nb);
    VectorXd rhs = b;
    for (int j = 0; j < nb; ++j) base[j] = herm_sxw(j, Rd[j]);
    rhs += op_a(base);
    VectorXd dy_p = Mf.solve(rhs);
    std::vector<MatrixXd> aty_p = op_at(dy_p);
    std::vector<MatrixXd> dS_p(nb), dX_p(nb);
    for (int j = 0; j < nb; ++j) {
      dS_p[j] = Rd[j] - aty_p[j];
      dX_p[j] = -sol.X[j] - herm_sxw(j, dS_p[j]);
    }
    double ap = 1e30, ad = 1e30;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, sdpdetail::max_step(sol.X[j], dX_p[j]));
      ad = std::min(ad, sdpdetail::max_step(sol.S[j], dS_p[j]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j)
      mu_aff += ((sol.X[j] + ap * dX_p[j]).array() *
                 (sol.S[j] + ad * dS_p[j]).array()).sum();
    mu_aff /= std::max(1, ntot);
    double sigma = std::pow(std::max(mu_aff, 0.0) / std::max(mu, 1e-300), 3.0);
    sigma = std::min(1.0, std::max(sigma, 1e-8));
    double mu_t = sigma * mu;

    // Corrector with the Mehrotra second-order term.
    std::vector<MatrixXd> corr(nb);
    for (int j = 0; j < nb; ++j)
      corr[j] = base[j] + sdpdetail::sym(Sinv[j] * dS_p[j] * dX_p[j]) -
                mu_t * Sinv[j];
    rhs = b + op_a(corr);
    VectorXd dy = Mf.solve(rhs);
    std::vector<MatrixXd> aty_c = op_at(dy);
    std::vector<MatrixXd> dS(nb), dX(nb);
    for (int j = 0; j < nb; ++j) {
      dS[j] = Rd[j] - aty_c[j];
      dX[j] = mu_t * Sinv[j] - sol.X[j] - herm_sxw(j, dS[j]) -
              sdpdetail::sym(Sinv[j] * dS_p[j] * dX_p[j]);
    }
    ap = 1e30;
    ad = 1e30;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, sdpdetail::max_step(sol.X[j], dX[j]));
      ad = std::min(ad, sdpdetail::max_step(sol.S[j], dS[j]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);
    if (ap < 1e-10 && ad < 1e-10) {
      sol.status = SDPStatus::NumericalFailure;
      return sol;
    }
    for (int j = 0; j < nb; ++j) {
      sol.X[j] += ap * dX[j];
      sol.S[j] += ad * dS[j];
    }
    sol.y += ad * dy;
  }
  sol.status = SDPStatus::MaxIter;
  return sol;
}

struct KktReport {
  double primal_res = 0.0;
  double dual_res = 0.0;
  double gap = 0.0;
  double min_eig_X = 0.0;
  double min_eig_S = 0.0;
};

inline KktReport check_kkt(const SDPProblem& p, const SDPSolution& sol) {
  KktReport r;
  int nb = static_cast<int>(p.dims.size());
  // Note: sol may correspond to the reduced (independent-row) system; we
  // recompute against whatever rows it carries multipliers for.
  std::vector<int> keep = independent_rows(p);
  QCOMB_REQUIRE(static_cast<int>(keep.size()) == sol.y.size(),
                "check_kkt: multiplier count mismatch");
  double normB = 1.0, normC = 1.0;
  std::vector<MatrixXd> aty(nb);
  for (int j = 0; j < nb; ++j) {
    aty[j] = MatrixXd::Zero(p.dims[j], p.dims[j]);
    normC = std::max(normC, p.objective[j].norm());
  }
  double pobj = 0.0, dobj = 0.0;
  for (size_t kk = 0; kk < keep.size(); ++kk) {
    const auto& con = p.constraints[keep[kk]];
    double ax = 0.0;
    for (const auto& t : con.terms) {
      ax += (t.A.array() * sol.X[t.block].array()).sum();
      aty[t.block] += sol.y(kk) * t.A;
    }
    normB = std::max(normB, std::abs(con.rhs));
    r.primal_res = std::max(r.primal_res, std::abs(ax - con.rhs));
    dobj += sol.y(kk) * con.rhs;
  }
  r.primal_res /= (1.0 + normB);
  for (int j = 0; j < nb; ++j) {
    pobj += (p.objective[j].array() * sol.X[j].array()).sum();
    r.dual_res = std::max(
        r.dual_res, (p.objective[j] - sol.S[j] - aty[j]).norm() / (1.0 + normC));
    Eigen::SelfAdjointEigenSolver<MatrixXd> ex(sdpdetail::sym(sol.X[j]),
                                               Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sdpdetail::sym(sol.S[j]),
                                               Eigen::EigenvaluesOnly);
    r.min_eig_X = std::min(r.min_eig_X, ex.eigenvalues()(0));
    r.min_eig_S = std::min(r.min_eig_S, es.eigenvalues()(0));
  }
  r.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
  return r;
}

}  // namespace qcomb

#endif  // QCOMB_SDP_SOLVER_HPP
