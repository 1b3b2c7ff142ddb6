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

#ifndef QCOMB_OBJECTIVE_HPP
#define QCOMB_OBJECTIVE_HPP

#include <map>
#include <string>

#include "qcomb/blocks.hpp"
#include "qcomb/choi_verify.hpp"

namespace qcomb {

// The reduced objective is
//   F = Tr(C Omega)
//     = (1/d^2) sum_{lm} sum_{TT'QQ'} c^{lm}_{T'TQQ'} / (d_l d_m)
//         * Tr( psi(pi) E^l_{TT'} psi(pi)^{-1} Etilde^m_{QQ'} ),
// with pi the full cyclic permutation on n+1 legs. The shift direction
// and the path-index placement are ambiguous in print; both are fixed
// once against the full-space oracle at d=2, n=1 and then frozen.
struct ObjectiveConvention {
  int shift = 1;        // cyclic shift offset applied inside pairing traces
  bool swap_t = false;  // exchange T <-> T' in the trace coefficient
  bool swap_q = false;  // exchange Q <-> Q'

  std::string str() const {
    return "shift=" + std::to_string(shift) + (swap_t ? ",swapT" : "") +
           (swap_q ? ",swapQ" : "");
  }
};

// Per-(lambda, mu) objective coefficient matrices W with
// F = sum_{lm} Tr(W^{lm} C^{lm}). Pairs with distinct labels never share
// support under the cyclic permutation (orthogonal central projectors),
// so only lambda == mu blocks are computed.
struct ObjectiveBlocks {
  std::vector<MatrixXcd> W;  // indexed lam * num_right(top) + mu
  ObjectiveConvention conv;
};

inline ObjectiveBlocks objective_blocks_with(const TaskGeometry& g,
                                             const ObjectiveConvention& conv) {
  int top = g.teeth();
  ObjectiveBlocks out;
  out.conv = conv;
  int nl = g.num_left(top), nr = g.num_right(top);
  out.W.resize(nl * nr);
  auto sigma = cyclic_shift(top, conv.shift);
  double d2 = static_cast<double>(g.d) * g.d;
  for (int lam = 0; lam < nl; ++lam) {
    int mT = g.BL().num_paths(top, lam);
    double dl = static_cast<double>(g.BL().dims[top][lam]);
    for (int mu = 0; mu < nr; ++mu) {
      int mQ = g.BR().num_paths(top, mu);
      double dm = static_cast<double>(g.BR().dims[top][mu]);
      MatrixXcd W = MatrixXcd::Zero(mT * mQ, mT * mQ);
      if (g.BL().levels[top][lam] == g.BR().levels[top][mu]) {
        PairingTraces pt(*g.L, lam, *g.R, mu, sigma);
        for (int t = 0; t < mT; ++t)
          for (int t2 = 0; t2 < mT; ++t2)
            for (int q = 0; q < mQ; ++q)
              for (int q2 = 0; q2 < mQ; ++q2) {
                int a = conv.swap_t ? t2 : t;
                int b = conv.swap_t ? t : t2;
                int c = conv.swap_q ? q2 : q;
                int e = conv.swap_q ? q : q2;
                // W[(T,Q'),(T',Q)] = K_{T T' Q Q'} / (d^2 d_l d_m)
                W(t * mQ + q2, t2 * mQ + q) =
                    pt.trace(a, b, c, e) / (d2 * dl * dm);
              }
      }
      out.W[lam * nr + mu] = std::move(W);
    }
  }
  return out;
}

inline double reduced_objective(const ObjectiveBlocks& obj, const BlockSet& top) {
  cxd val = 0.0;
  for (size_t i = 0; i < obj.W.size(); ++i)
    val += (obj.W[i] * top.blocks[i]).trace();
  QCOMB_REQUIRE(std::abs(val.imag()) < 1e-8,
                "reduced objective has imaginary part " << val.imag());
  return val.real();
}

// Seeded Hermitian (not necessarily feasible) test blocks.
inline BlockSet random_hermitian_blocks(const TaskGeometry& g, uint64_t seed) {
  std::mt19937_64 rng(seed);
  BlockSet b = zero_blocks(g, g.teeth());
  for (auto& m : b.blocks) {
    MatrixXcd a = ginibre(static_cast<int>(m.rows()), static_cast<int>(m.cols()), rng);
    m = herm(a);
  }
  return b;
}

// Calibration: enumerate the small convention space and keep the first
// member that reproduces the full-space Tr(C Omega) on random block data
// at d=2, n=1. Aborts if none matches to 1e-9.
inline ObjectiveConvention calibrate_objective_convention(Task task) {
  Workspace ws(2);
  TaskGeometry g = TaskGeometry::make(ws, task, 2, 1);
  MatrixXcd omega = omega_full(task, 2, 1);
  std::vector<BlockSet> samples;
  for (uint64_t s = 0; s < 4; ++s)
    samples.push_back(random_hermitian_blocks(g, 100 + s));

  std::vector<ObjectiveConvention> cands;
  for (int shift : {1, -1})
    for (bool st : {false, true})
      for (bool sq : {false, true}) cands.push_back({shift, st, sq});

  for (const auto& conv : cands) {
    ObjectiveBlocks obj = objective_blocks_with(g, conv);
    bool herm_ok = true;
    for (const auto& w : obj.W)
      if (herm_residual(w) > 1e-9) herm_ok = false;
    if (!herm_ok) continue;
    double worst = 0.0;
    for (const auto& blk : samples) {
      ChoiMatrix C = choi_from_blocks(g, blk);
      double full = std::real((C.mat * omega).trace());
      double red = reduced_objective(obj, blk);
      worst = std::max(worst, std::abs(full - red));
    }
    if (worst < 1e-9) return conv;
  }
  QCOMB_REQUIRE(false, "objective calibration failed for task "
                           << task_name(task) << ": no convention matches the "
                           << "full-space oracle at d=2, n=1");
  return {};
}

inline const ObjectiveConvention& objective_convention(Task task) {
  static std::map<Task, ObjectiveConvention> cache;
  auto it = cache.find(task);
  if (it == cache.end())
    it = cache.emplace(task, calibrate_objective_convention(task)).first;
  return it->second;
}

inline ObjectiveBlocks objective_blocks(const TaskGeometry& g) {
  return objective_blocks_with(g, objective_convention(g.task));
}

}  // namespace qcomb

#endif  // QCOMB_OBJECTIVE_HPP
