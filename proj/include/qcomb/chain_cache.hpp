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

#ifndef QCOMB_CHAIN_CACHE_HPP
#define QCOMB_CHAIN_CACHE_HPP

#include <map>
#include <memory>
#include <vector>

#include "qcomb/bratteli.hpp"
#include "qcomb/model_registry.hpp"
#include "qcomb/tensor_ops.hpp"

namespace qcomb {

// Path isometries U_T : V_lambda -> (C^d)^{(x) k} for one Bratteli chain,
// built by the recursion U_{T -> lambda'} = (U_T (x) 1_d) Gamma_edge and
// memoized level by level. Matrix units are kept lazily as isometry
// pairs; materialize() forms U_T U_{T'}^+.
class ChainCache {
 public:
  ChainCache(const ChainSpec& spec, ModelRegistry* reg)
      : B_(build_bratteli(spec)), reg_(reg) {
    // Freeze models and edge isometries level by level in canonical order.
    for (int k = 1; k < B_.num_levels(); ++k)
      for (int v = 0; v < static_cast<int>(B_.levels[k].size()); ++v)
        for (int p : B_.parents[k][v])
          reg_->edge_isometry(B_.levels[k - 1][p], spec.legs[k - 1],
                              B_.levels[k][v]);
    isoms_.resize(B_.num_levels());
    isoms_[0].push_back({MatrixXcd::Identity(1, 1)});
  }

  const BrattelDiagram& diagram() const { return B_; }
  const ChainSpec& spec() const { return B_.spec; }
  ModelRegistry& registry() { return *reg_; }

  const MatrixXcd& path_isometry(int level, int v, int t) {
    ensure_level(level);
    return isoms_[level][v][t];
  }

  MatrixXcd materialize_unit(int level, int v, int t, int tp) {
    const MatrixXcd& a = path_isometry(level, v, t);
    const MatrixXcd& b = path_isometry(level, v, tp);
    return a * b.adjoint();
  }

  // Sum of E^lambda_{T,T} over all paths of one vertex (the isotypic
  // projector restricted to this label).
  MatrixXcd vertex_projector(int level, int v) {
    int dim = static_cast<int>(ipow(spec().d, level));
    MatrixXcd P = MatrixXcd::Zero(dim, dim);
    for (int t = 0; t < B_.num_paths(level, v); ++t)
      P += materialize_unit(level, v, t, t);
    return P;
  }

 private:
  void ensure_level(int level) {
    QCOMB_REQUIRE(level < B_.num_levels(), "level out of range");
    for (int k = static_cast<int>(isoms_filled_) + 1; k <= level; ++k) {
      int d = spec().d;
      isoms_[k].resize(B_.levels[k].size());
      for (int v = 0; v < static_cast<int>(B_.levels[k].size()); ++v) {
        int dc = static_cast<int>(B_.dims[k][v]);
        isoms_[k][v].resize(B_.paths[k][v].size());
        for (size_t t = 0; t < B_.paths[k][v].size(); ++t) {
          auto [pv, pt] = B_.truncate_path(k, v, static_cast<int>(t));
          const MatrixXcd& up = isoms_[k - 1][pv][pt];
          const MatrixXcd& gamma = reg_->edge_isometry(
              B_.levels[k - 1][pv], spec().legs[k - 1], B_.levels[k][v]);
          int dp = static_cast<int>(up.cols());
          // (U (x) 1_d) Gamma, done per tensor-leg slice of Gamma.
          MatrixXcd out = MatrixXcd::Zero(up.rows() * d, dc);
          for (int x = 0; x < d; ++x) {
            MatrixXcd gx(dp, dc);
            for (int p = 0; p < dp; ++p) gx.row(p) = gamma.row(p * d + x);
            MatrixXcd rx = up * gx;
            for (int r = 0; r < up.rows(); ++r) out.row(r * d + x) = rx.row(r);
          }
          isoms_[k][v][t] = std::move(out);
        }
      }
      isoms_filled_ = k;
    }
  }

  BrattelDiagram B_;
  ModelRegistry* reg_;
  std::vector<std::vector<std::vector<MatrixXcd>>> isoms_;  // [level][v][t]
  size_t isoms_filled_ = 0;
};

// Shared registry plus one cache per chain spec; inversion uses the same
// chain on both sides, so the cache is shared automatically.
class Workspace {
 public:
  explicit Workspace(int d) : reg_(d) {}

  ModelRegistry& registry() { return reg_; }

  ChainCache& chain(const ChainSpec& spec) {
    auto it = chains_.find(spec);
    if (it == chains_.end())
      it = chains_.emplace(spec, std::make_unique<ChainCache>(spec, &reg_)).first;
    return *it->second;
  }

 private:
  ModelRegistry reg_;
  std::map<ChainSpec, std::unique_ptr<ChainCache>> chains_;
};

// Tr( psi(sigma) E^lambda_{T,T'} psi(sigma)^{-1} Etilde^mu_{Q,Q'} ) in
// low-rank form; cost O(d^m d_lambda d_mu) per overlap matrix.
class PairingTraces {
 public:
  // Computes G[q][t] = Utilde_q^+ (psi(sigma) U_t) for one (lambda at the
  // top of L, mu at the top of R) pair; trace(t,t',q,q') then costs
  // O(d_lambda d_mu).
  PairingTraces(ChainCache& L, int vL, ChainCache& R, int vR,
                const std::vector<int>& sigma) {
    int m = static_cast<int>(L.spec().legs.size());
    QCOMB_REQUIRE(static_cast<int>(R.spec().legs.size()) == m,
                  "pairing: chain length mismatch");
    int top = m;
    int d = L.spec().d;
    int mt = L.diagram().num_paths(top, vL);
    int mq = R.diagram().num_paths(top, vR);
    G_.resize(mq, std::vector<MatrixXcd>(mt));
    std::vector<MatrixXcd> psiU(mt);
    for (int t = 0; t < mt; ++t)
      psiU[t] = perm_apply_left(sigma, d, L.path_isometry(top, vL, t));
    for (int q = 0; q < mq; ++q) {
      const MatrixXcd& uq = R.path_isometry(top, vR, q);
      for (int t = 0; t < mt; ++t) G_[q][t] = uq.adjoint() * psiU[t];
    }
  }

  cxd trace(int t, int tp, int q, int qp) const {
    // Tr( G[q][tp]^+  G[qp][t] )
    return (G_[q][tp].conjugate().cwiseProduct(G_[qp][t])).sum();
  }

 private:
  std::vector<std::vector<MatrixXcd>> G_;
};

inline cxd pairing_trace(ChainCache& L, int vL, int t, int tp, ChainCache& R,
                         int vR, int q, int qp, const std::vector<int>& sigma) {
  PairingTraces p(L, vL, R, vR, sigma);
  return p.trace(t, tp, q, qp);
}

}  // namespace qcomb

#endif  // QCOMB_CHAIN_CACHE_HPP
