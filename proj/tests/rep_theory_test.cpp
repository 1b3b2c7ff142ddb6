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

#include <random>
#include "qcomb/bratteli.hpp"
#include "qcomb/tensor_ops.hpp"

using namespace qcomb;

namespace {

IrrepLabel L(std::vector<int> w) { return IrrepLabel(std::move(w)); }

// Independent path counter: plain DFS over the diagram edges.
int64_t count_paths_dfs(const BrattelDiagram& B, int level, int v) {
  if (level == 0) return 1;
  int64_t n = 0;
  for (int p : B.parents[level][v]) n += count_paths_dfs(B, level - 1, p);
  return n;
}

}  // namespace

TEST(Branch, PieriExamples) {
  EXPECT_EQ(branch(L({1, 0}), LegKind::Defining, 2),
            (std::vector<IrrepLabel>{L({2, 0}), L({1, 1})}));
  EXPECT_EQ(branch(L({0, 0}), LegKind::ConjDefining, 2),
            (std::vector<IrrepLabel>{L({0, -1})}));
  EXPECT_EQ(branch(L({2, 1, 0}), LegKind::Defining, 3),
            (std::vector<IrrepLabel>{L({3, 1, 0}), L({2, 2, 0}), L({2, 1, 1})}));
}

TEST(Branch, DuplicateFreeAndDeterministic) {
  for (int d : {2, 3, 4}) {
    auto kids = branch(IrrepLabel::trivial(d), LegKind::Defining, d);
    for (const auto& k : kids) {
      auto a = branch(k, LegKind::Defining, d);
      auto b = branch(k, LegKind::Defining, d);
      EXPECT_EQ(a, b);
      for (size_t i = 0; i + 1 < a.size(); ++i) EXPECT_TRUE(a[i] < a[i + 1]);
    }
  }
}

TEST(WeylDim, KnownValues) {
  for (int d : {2, 3, 5, 7}) {
    std::vector<int> w(d, 0);
    EXPECT_EQ(weyl_dim(L(w), d), 1);
    w[0] = 1;
    EXPECT_EQ(weyl_dim(L(w), d), d);
  }
  EXPECT_EQ(weyl_dim(L({2, 0}), 2), 3);
  EXPECT_EQ(weyl_dim(L({1, 0, -1}), 3), 8);  // adjoint of U(3)
}

TEST(WeylDim, SymmetricSubspaceOracle) {
  // dim V_(2,0) for d=2 equals the rank of the symmetric projector on
  // C^2 (x) C^2, computed brute force.
  int d = 2;
  MatrixXcd swap = perm_op({1, 0}, d);
  MatrixXcd proj = 0.5 * (MatrixXcd::Identity(4, 4) + swap);
  EXPECT_NEAR(proj.trace().real(), static_cast<double>(weyl_dim(L({2, 0}), d)),
              1e-12);
}

TEST(Bratteli, SmallDiagrams) {
  ChainSpec s{2, {LegKind::Defining, LegKind::Defining}};
  auto B = build_bratteli(s);
  ASSERT_EQ(B.num_levels(), 3);
  EXPECT_EQ(B.levels[0], (std::vector<IrrepLabel>{L({0, 0})}));
  EXPECT_EQ(B.levels[1], (std::vector<IrrepLabel>{L({1, 0})}));
  EXPECT_EQ(B.levels[2], (std::vector<IrrepLabel>{L({2, 0}), L({1, 1})}));

  ChainSpec s2{3, {LegKind::ConjDefining, LegKind::Defining}};
  auto B2 = build_bratteli(s2);
  EXPECT_EQ(B2.levels[1], (std::vector<IrrepLabel>{L({0, 0, -1})}));
  EXPECT_EQ(B2.levels[2], (std::vector<IrrepLabel>{L({1, 0, -1}), L({0, 0, 0})}));

  ChainSpec s3{2, std::vector<LegKind>(4, LegKind::Defining)};
  auto B3 = build_bratteli(s3);
  EXPECT_EQ(B3.levels[4],
            (std::vector<IrrepLabel>{L({4, 0}), L({3, 1}), L({2, 2})}));
}

TEST(Bratteli, PathCounts) {
  ChainSpec young{2, std::vector<LegKind>(3, LegKind::Defining)};
  auto B = build_bratteli(young);
  EXPECT_EQ(static_cast<int>(enumerate_paths(B, L({2, 1})).size()), 2);
  EXPECT_EQ(static_cast<int>(enumerate_paths(B, L({3, 0})).size()), 1);
  EXPECT_THROW(enumerate_paths(B, L({5, 0})), Error);

  // Path counts match an independent DFS walk on every top vertex of the
  // transposition right chain.
  auto [sl, sr] = chain_for_task(Task::Transpose, 2, 2);
  auto BR = build_bratteli(sr);
  int top = BR.top();
  for (int v = 0; v < static_cast<int>(BR.levels[top].size()); ++v)
    EXPECT_EQ(BR.num_paths(top, v), count_paths_dfs(BR, top, v));
  (void)sl;
}

TEST(Bratteli, ChainForTask) {
  auto [sl, sr] = chain_for_task(Task::Transpose, 2, 1);
  EXPECT_EQ(sl.legs, (std::vector<LegKind>{LegKind::Defining, LegKind::ConjDefining}));
  EXPECT_EQ(sr.legs, (std::vector<LegKind>{LegKind::ConjDefining, LegKind::Defining}));

  auto [il, ir] = chain_for_task(Task::Invert, 2, 1);
  EXPECT_EQ(il.legs, (std::vector<LegKind>(2, LegKind::Defining)));
  EXPECT_EQ(il, ir);

  // Last-level vertex sets of both chains coincide.
  for (Task t : {Task::Transpose, Task::Invert})
    for (int d : {2, 3})
      for (int n : {1, 2}) {
        auto [cl, cr] = chain_for_task(t, d, n);
        auto BL = build_bratteli(cl), BR = build_bratteli(cr);
        EXPECT_EQ(BL.levels[BL.top()], BR.levels[BR.top()])
            << task_name(t) << " d=" << d << " n=" << n;
      }
}

TEST(Bratteli, DimensionCountInvariant) {
  // sum over children of weyl_dim equals d * weyl_dim(parent).
  for (int d : {2, 3, 4})
    for (LegKind first : {LegKind::Defining, LegKind::ConjDefining})
      for (LegKind leg : {LegKind::Defining, LegKind::ConjDefining}) {
        ChainSpec s{d, {first, leg, leg}};
        auto B = build_bratteli(s);
        for (int k = 0; k + 1 < B.num_levels(); ++k)
          for (int v = 0; v < static_cast<int>(B.levels[k].size()); ++v) {
            int64_t sum = 0;
            for (const auto& c : branch(B.levels[k][v], s.legs[k], d))
              sum += weyl_dim(c, d);
            EXPECT_EQ(sum, d * B.dims[k][v]);
          }
      }
}

TEST(Bratteli, SchurWeylDimensionSum) {
  // sum_lambda m_lambda * d_lambda = d^(#legs), exactly in integers.
  for (int d : {2, 3})
    for (Task t : {Task::Transpose, Task::Invert})
      for (int n : {1, 2, 3}) {
        auto [cl, cr] = chain_for_task(t, d, n);
        for (const auto& spec : {cl, cr}) {
          auto B = build_bratteli(spec);
          int top = B.top();
          int64_t sum = 0;
          for (int v = 0; v < static_cast<int>(B.levels[top].size()); ++v)
            sum += B.num_paths(top, v) * B.dims[top][v];
          EXPECT_EQ(sum, ipow(d, top));
        }
      }
}

TEST(PermOps, Basics) {
  int d = 2;
  auto sigma = cyclic_shift(3, 1);
  auto tau = cyclic_shift(3, 2);
  MatrixXcd ps = perm_op(sigma, d), pt = perm_op(tau, d);
  EXPECT_NEAR((ps * ps - pt).norm(), 0.0, 1e-14);
  EXPECT_NEAR((ps * perm_op(perm_inverse(sigma), d) -
               MatrixXcd::Identity(8, 8)).norm(), 0.0, 1e-14);
  EXPECT_NEAR(ps.trace().real(), std::pow(d, perm_cycles(sigma)), 1e-12);

  // psi(sigma) (A (x) B (x) C) psi(sigma)^-1 permutes the factors.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto rnd = [&] {
    MatrixXcd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = cxd(g(rng), g(rng));
    return M;
  };
  MatrixXcd A = rnd(), B = rnd(), C = rnd();
  MatrixXcd lhs = conjugate_by_perm(sigma, d, kron_all({A, B, C}));
  // sigma = (0->1,1->2,2->0): factor at new position sigma(k) is old k.
  MatrixXcd rhs = kron_all({C, A, B});
  EXPECT_NEAR((lhs - rhs).norm(), 0.0, 1e-12);
}

TEST(PermOps, PartialTrace) {
  int d = 2;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  auto rnd = [&rng, &g, d] {
    MatrixXcd M(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) M(i, j) = cxd(g(rng), g(rng));
    return M;
  };
  MatrixXcd A = rnd(), B = rnd(), C = rnd();
  MatrixXcd M = kron_all({A, B, C});
  EXPECT_NEAR((partial_trace(M, 3, d, {1}) - B.trace() * kron(A, C)).norm(), 0.0,
              1e-12);
  EXPECT_NEAR((partial_trace(M, 3, d, {0, 2}) - A.trace() * C.trace() * B).norm(),
              0.0, 1e-12);
}
