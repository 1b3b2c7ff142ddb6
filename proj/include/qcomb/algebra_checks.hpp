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

#ifndef QCOMB_ALGEBRA_CHECKS_HPP
#define QCOMB_ALGEBRA_CHECKS_HPP

#include <random>

#include "qcomb/chain_cache.hpp"
#include "qcomb/haar.hpp"

namespace qcomb {

// Numerical property checks for the matrix-unit system of one chain.
// These back both the unit tests and the acceptance algebra suite.

struct UnitAlgebraResiduals {
  double product = 0.0;       // E_pq E_p'q' = delta delta E_pq'
  double adjoint = 0.0;       // E_pq^+ = E_qp
  double trace = 0.0;         // Tr E_pq = delta_pq d_lambda
  double completeness = 0.0;  // sum E_TT = 1
};

inline UnitAlgebraResiduals check_unit_algebra(ChainCache& cache) {
  const auto& B = cache.diagram();
  int top = B.top();
  int dim = static_cast<int>(ipow(B.spec.d, top));
  UnitAlgebraResiduals r;

  int nv = static_cast<int>(B.levels[top].size());
  MatrixXcd ident = MatrixXcd::Zero(dim, dim);
  for (int v = 0; v < nv; ++v) {
    int m = B.num_paths(top, v);
    double dl = static_cast<double>(B.dims[top][v]);
    for (int t = 0; t < m; ++t) {
      ident += cache.materialize_unit(top, v, t, t);
      for (int tp = 0; tp < m; ++tp) {
        MatrixXcd e = cache.materialize_unit(top, v, t, tp);
        r.adjoint = std::max(
            r.adjoint, (e.adjoint() - cache.materialize_unit(top, v, tp, t)).norm());
        double want = (t == tp) ? dl : 0.0;
        r.trace = std::max(r.trace, std::abs(e.trace() - want));
      }
    }
    // product rule within the same vertex and across vertices
    for (int w = 0; w < nv; ++w) {
      int mw = B.num_paths(top, w);
      for (int t = 0; t < m; ++t)
        for (int tp = 0; tp < m; ++tp)
          for (int q = 0; q < mw; ++q)
            for (int qp = 0; qp < mw; ++qp) {
              MatrixXcd prod = cache.materialize_unit(top, v, t, tp) *
                               cache.materialize_unit(top, w, q, qp);
              MatrixXcd want = MatrixXcd::Zero(dim, dim);
              if (v == w && tp == q) want = cache.materialize_unit(top, v, t, qp);
              r.product = std::max(r.product, (prod - want).norm());
            }
    }
  }
  r.completeness = (ident - MatrixXcd::Identity(dim, dim)).norm();
  return r;
}

struct PartialTraceResiduals {
  double tensor_identity = 0.0;  // E^mu_rs (x) 1_d = sum of extensions
  double partial_trace = 0.0;    // Tr_last E^lambda = (d_l/d_m) E^mu or 0
};

inline PartialTraceResiduals check_tensor_partial_trace(ChainCache& cache) {
  const auto& B = cache.diagram();
  int top = B.top();
  int d = B.spec.d;
  PartialTraceResiduals out;
  if (top < 1) return out;

  // Tensor identity, checked at the last edge layer.
  for (int v = 0; v < static_cast<int>(B.levels[top - 1].size()); ++v) {
    int m = B.num_paths(top - 1, v);
    for (int r = 0; r < m; ++r)
      for (int s = 0; s < m; ++s) {
        MatrixXcd lhs =
            kron(cache.materialize_unit(top - 1, v, r, s), MatrixXcd::Identity(d, d));
        MatrixXcd rhs = MatrixXcd::Zero(lhs.rows(), lhs.cols());
        for (int cv : B.children[top - 1][v]) {
          int re = B.extend_path(top - 1, v, r, cv);
          int se = B.extend_path(top - 1, v, s, cv);
          QCOMB_REQUIRE(re >= 0 && se >= 0, "extension missing");
          rhs += cache.materialize_unit(top, cv, re, se);
        }
        out.tensor_identity = std::max(out.tensor_identity, (lhs - rhs).norm());
      }
  }

  // Partial trace over the last leg (legs are numbered 0..top-1).
  std::vector<int> last{top - 1};
  for (int v = 0; v < static_cast<int>(B.levels[top].size()); ++v) {
    int m = B.num_paths(top, v);
    double dl = static_cast<double>(B.dims[top][v]);
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) {
        MatrixXcd tr =
            partial_trace(cache.materialize_unit(top, v, p, q), top, d, last);
        auto [pv, pt] = B.truncate_path(top, v, p);
        auto [qv, qt] = B.truncate_path(top, v, q);
        MatrixXcd want = MatrixXcd::Zero(tr.rows(), tr.cols());
        if (pv == qv) {
          double dm = static_cast<double>(B.dims[top - 1][pv]);
          want = (dl / dm) * cache.materialize_unit(top - 1, pv, pt, qt);
        }
        out.partial_trace = std::max(out.partial_trace, (tr - want).norm());
      }
  }
  return out;
}

// Tensor action of a group element along the chain legs: g on defining
// legs, conj(g) on conjugate legs.
inline MatrixXcd chain_group_action(const ChainSpec& spec, const MatrixXcd& g) {
  std::vector<MatrixXcd> factors;
  for (LegKind leg : spec.legs)
    factors.push_back(leg == LegKind::Defining ? g : g.conjugate().eval());
  return kron_all(factors);
}

inline double check_commutation_with_action(ChainCache& cache, int samples,
                                            std::mt19937_64& rng) {
  const auto& B = cache.diagram();
  int top = B.top();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    MatrixXcd g = haar_unitary(B.spec.d, rng);
    MatrixXcd act = chain_group_action(B.spec, g);
    for (int v = 0; v < static_cast<int>(B.levels[top].size()); ++v) {
      int m = B.num_paths(top, v);
      for (int t = 0; t < m; ++t)
        for (int tp = 0; tp < m; ++tp) {
          MatrixXcd e = cache.materialize_unit(top, v, t, tp);
          worst = std::max(worst, (e * act - act * e).norm());
        }
    }
  }
  return worst;
}

}  // namespace qcomb

#endif  // QCOMB_ALGEBRA_CHECKS_HPP
