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

#include <gtest/gtest.h>

#include <cstdio>
#include "qcomb/comb_sdp.hpp"
#include "qcomb/sdpa_io.hpp"
#include "qcomb/random_comb.hpp"

using namespace qcomb;

namespace {

double eval_rows(const std::vector<HermRow>& rows, const BlockSet& top,
                 double* worst) {
  double w = 0.0;
  for (const auto& r : rows) {
    cxd v = 0.0;
    for (const auto& [j, A] : r.A) v += (A * top.blocks[j]).trace();
    w = std::max(w, std::abs(v - cxd(r.rhs, 0.0)));
  }
  if (worst) *worst = w;
  return w;
}

}  // namespace

TEST(CombConstraints, RowsMatchDirectResidual) {
  // The trace-affine rows on the top blocks vanish exactly on feasible
  // points (random twirled combs, depolarizing comb), and detect
  // infeasible ones.
  for (Task task : {Task::Invert, Task::Transpose})
    for (int n : {1, 2}) {
      Workspace ws(2);
      TaskGeometry g = TaskGeometry::make(ws, task, 2, n);
      auto rows = comb_constraint_rows(g);
      double w;
      eval_rows(rows, depolarizing_blocks(g), &w);
      EXPECT_LT(w, 1e-10) << task_name(task) << " depol n=" << n;
      for (uint64_t s = 0; s < 3; ++s) {
        BlockSet blk = random_feasible_blocks(g, 400 + s);
        eval_rows(rows, blk, &w);
        EXPECT_LT(w, 1e-9) << task_name(task) << " n=" << n << " seed " << s;
      }
      BlockSet bad = random_hermitian_blocks(g, 17);
      eval_rows(rows, bad, &w);
      EXPECT_GT(w, 1e-3);
    }
}

TEST(CombSdp, BlockSizesInvertSmall) {
  Workspace ws(2);
  TaskGeometry g = TaskGeometry::make(ws, Task::Invert, 2, 1);
  AssembledSDP a = assemble_sdp(g);
  for (int s : a.complex_dims) EXPECT_EQ(s, 1);  // single paths everywhere
}

TEST(CombSdp, KnownOptimaSmall) {
  struct Cell {
    Task task;
    int d, n;
    double want;
  };
  std::vector<Cell> cells = {
      {Task::Invert, 2, 1, 0.5},
      {Task::Transpose, 2, 1, 0.5},
      {Task::Invert, 2, 2, 0.75},
      {Task::Transpose, 2, 2, 0.75},
      {Task::Invert, 3, 1, 2.0 / 9.0},
      {Task::Transpose, 3, 1, 2.0 / 9.0},
      {Task::Invert, 3, 2, 1.0 / 3.0},
      {Task::Transpose, 3, 2, 0.407407},
  };
  for (const auto& c : cells) {
    Workspace ws(c.d);
    TaskGeometry g = TaskGeometry::make(ws, c.task, c.d, c.n);
    CombSDPResult r = solve_comb_sdp(g);
    EXPECT_EQ(r.sol.status, SDPStatus::Optimal)
        << task_name(c.task) << " d=" << c.d << " n=" << c.n;
    EXPECT_NEAR(r.fidelity, c.want, 1e-6)
        << task_name(c.task) << " d=" << c.d << " n=" << c.n;
  }
}

TEST(CombSdp, FeasibilityTransferToFullSpace) {
  // The solved blocks reconstruct a full Choi matrix that passes the
  // independent full-space comb checker.
  for (Task task : {Task::Invert, Task::Transpose}) {
    Workspace ws(2);
    TaskGeometry g = TaskGeometry::make(ws, task, 2, 2);
    CombSDPResult r = solve_comb_sdp(g);
    ASSERT_EQ(r.sol.status, SDPStatus::Optimal);
    ChoiMatrix C = choi_from_blocks(g, r.blocks);
    auto rep = check_comb_conditions(C);
    EXPECT_LT(rep.worst_marginal, 1e-7) << task_name(task);
    EXPECT_LT(rep.trace_c0, 1e-7);
    EXPECT_GT(rep.min_eigenvalue, -1e-7);
    EXPECT_LT(check_symmetry(C, task, 5, 21), 1e-8);

    // Objective transfer at the optimum.
    MatrixXcd omega = omega_full(task, 2, 2);
    EXPECT_NEAR(std::real((C.mat * omega).trace()), r.fidelity, 1e-7);
  }
}

TEST(CombSdp, SdpaExportOfCombProblem) {
  Workspace ws(2);
  TaskGeometry g = TaskGeometry::make(ws, Task::Invert, 2, 1);
  AssembledSDP a = assemble_sdp(g);
  std::string path = "comb_d2n1.dat-s";
  export_sdpa(a.prob, path);
  SDPProblem q = import_sdpa(path);
  auto s1 = solve_sdp(a.prob);
  auto s2 = solve_sdp(q);
  ASSERT_EQ(s2.status, SDPStatus::Optimal);
  EXPECT_NEAR(s1.pobj, s2.pobj, 1e-6);
  EXPECT_NEAR(-s2.pobj, 0.5, 1e-6);  // known optimum survives the round trip
  std::remove(path.c_str());
}
