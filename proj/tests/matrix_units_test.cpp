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

#include "qcomb/algebra_checks.hpp"
#include "qcomb/chain_cache.hpp"
#include "qcomb/haar.hpp"

using namespace qcomb;

namespace {
IrrepLabel L(std::vector<int> w) { return IrrepLabel(std::move(w)); }
}  // namespace

TEST(ModelRegistry, FirstLegIsDefiningRep) {
  ModelRegistry reg(3);
  const MatrixXcd& gamma = reg.edge_isometry(IrrepLabel::trivial(3),
                                             LegKind::Defining, L({1, 0, 0}));
  EXPECT_NEAR((gamma - MatrixXcd::Identity(3, 3)).norm(), 0.0, 1e-12);
  const auto& m = reg.model(L({1, 0, 0}));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      MatrixXcd e = MatrixXcd::Zero(3, 3);
      e(a, b) = 1.0;
      EXPECT_NEAR((m.gen(a, b) - e).norm(), 0.0, 1e-12);
    }
}

TEST(ModelRegistry, SymmetricSubspaceEdge) {
  ModelRegistry reg(2);
  reg.edge_isometry(IrrepLabel::trivial(2), LegKind::Defining, L({1, 0}));
  const MatrixXcd& gamma =
      reg.edge_isometry(L({1, 0}), LegKind::Defining, L({2, 0}));
  MatrixXcd swap = perm_op({1, 0}, 2);
  MatrixXcd psym = 0.5 * (MatrixXcd::Identity(4, 4) + swap);
  EXPECT_NEAR((gamma * gamma.adjoint() - psym).norm(), 0.0, 1e-10);
}

TEST(ModelRegistry, EntangledPairEdge) {
  ModelRegistry reg(2);
  reg.edge_isometry(IrrepLabel::trivial(2), LegKind::Defining, L({1, 0}));
  const MatrixXcd& gamma =
      reg.edge_isometry(L({1, 0}), LegKind::ConjDefining, L({0, 0}));
  VectorXcd me(4);
  me << 1, 0, 0, 1;
  me /= std::sqrt(2.0);
  EXPECT_NEAR(std::abs(me.dot(gamma.col(0))), 1.0, 1e-10);
}

TEST(ModelRegistry, ModelAndEdgeResiduals) {
  for (int d : {2, 3}) {
    Workspace ws(d);
    std::vector<ChainSpec> specs;
    for (LegKind a : {LegKind::Defining, LegKind::ConjDefining})
      for (LegKind b : {LegKind::Defining, LegKind::ConjDefining})
        for (LegKind c : {LegKind::Defining, LegKind::ConjDefining})
          specs.push_back(ChainSpec{d, {a, b, c}});
    for (const auto& s : specs) ws.chain(s);

    for (const auto& s : specs) {
      const auto& B = ws.chain(s).diagram();
      for (int k = 0; k < B.num_levels(); ++k)
        for (const auto& lab : B.levels[k]) {
          auto r = validate_model(ws.registry().model(lab));
          EXPECT_LT(r.commutation, 1e-10) << lab.str();
          EXPECT_LT(r.casimir, 1e-9) << lab.str();
          EXPECT_LT(r.cartan_integrality, 1e-9) << lab.str();
        }
      for (int k = 1; k < B.num_levels(); ++k)
        for (int v = 0; v < static_cast<int>(B.levels[k].size()); ++v)
          for (int p : B.parents[k][v]) {
            const auto& parent = ws.registry().model(B.levels[k - 1][p]);
            const auto& child = ws.registry().model(B.levels[k][v]);
            const auto& gamma = ws.registry().edge_isometry(
                B.levels[k - 1][p], s.legs[k - 1], B.levels[k][v]);
            EXPECT_LT(validate_edge(ws.registry(), parent, s.legs[k - 1], child,
                                    gamma), 1e-9);
          }
    }
  }
}

TEST(PathIsometry, SmallCases) {
  Workspace ws(2);
  ChainSpec s{2, {LegKind::Defining, LegKind::Defining}};
  auto& cache = ws.chain(s);
  // Level-1 path isometry is the identity on C^2.
  EXPECT_NEAR((cache.path_isometry(1, 0, 0) - MatrixXcd::Identity(2, 2)).norm(),
              0.0, 1e-12);
  // The (0,0)->(1,0)->(1,1) path spans the antisymmetric subspace.
  const auto& B = cache.diagram();
  int v11 = B.vertex_index(2, L({1, 1}));
  MatrixXcd u = cache.path_isometry(2, v11, 0);
  MatrixXcd swap = perm_op({1, 0}, 2);
  MatrixXcd pa = 0.5 * (MatrixXcd::Identity(4, 4) - swap);
  EXPECT_NEAR((u * u.adjoint() - pa).norm(), 0.0, 1e-10);
  EXPECT_NEAR((u.adjoint() * u - MatrixXcd::Identity(1, 1)).norm(), 0.0, 1e-12);
}

TEST(MatrixUnits, AlgebraIdentitiesSmall) {
  // Product rule, adjoint, trace, completeness and the tensor /
  // partial-trace identities for all chains with up to 3 legs.
  for (int d : {2, 3}) {
    Workspace ws(d);
    for (int len = 1; len <= 3; ++len) {
      std::vector<ChainSpec> specs;
      int count = 1 << len;
      for (int mask = 0; mask < count; ++mask) {
        ChainSpec s;
        s.d = d;
        for (int i = 0; i < len; ++i)
          s.legs.push_back((mask >> i) & 1 ? LegKind::ConjDefining
                                           : LegKind::Defining);
        specs.push_back(s);
      }
      for (const auto& s : specs) {
        auto r = check_unit_algebra(ws.chain(s));
        EXPECT_LT(r.product, 1e-10) << s.str();
        EXPECT_LT(r.adjoint, 1e-10) << s.str();
        EXPECT_LT(r.trace, 1e-10) << s.str();
        EXPECT_LT(r.completeness, 1e-10) << s.str();
        auto l = check_tensor_partial_trace(ws.chain(s));
        EXPECT_LT(l.tensor_identity, 1e-10) << s.str();
        EXPECT_LT(l.partial_trace, 1e-10) << s.str();
      }
    }
  }
}

TEST(MatrixUnits, CommuteWithGroupAction) {
  std::mt19937_64 rng(11);
  for (int d : {2, 3}) {
    Workspace ws(d);
    ChainSpec s{d, {LegKind::Defining, LegKind::Defining, LegKind::ConjDefining}};
    auto& cache = ws.chain(s);
    double worst = check_commutation_with_action(cache, 20, rng);
    EXPECT_LT(worst, 1e-9) << "d=" << d;
  }
}

TEST(PairingTrace, Examples) {
  // Inversion chain, d=2, n=1: both chains are the two-box Young lattice.
  Workspace ws(2);
  auto [sl, sr] = chain_for_task(Task::Invert, 2, 1);
  auto& cl = ws.chain(sl);
  auto& cr = ws.chain(sr);
  const auto& B = cl.diagram();
  int vsym = B.vertex_index(2, L({2, 0}));
  int vanti = B.vertex_index(2, L({1, 1}));

  auto swap = cyclic_shift(2, 1);
  // E = Etilde = symmetric projector, perm = swap -> 3.
  cxd t = pairing_trace(cl, vsym, 0, 0, cr, vsym, 0, 0, swap);
  EXPECT_NEAR(t.real(), 3.0, 1e-10);
  EXPECT_NEAR(t.imag(), 0.0, 1e-10);
  // Orthogonal central projectors -> 0 for any permutation.
  EXPECT_NEAR(std::abs(pairing_trace(cl, vsym, 0, 0, cr, vanti, 0, 0, swap)), 0.0,
              1e-10);
  // Identity permutation with equal chains: delta_{T,T'} d_lambda.
  auto ident = cyclic_shift(2, 0);
  EXPECT_NEAR(pairing_trace(cl, vsym, 0, 0, cr, vsym, 0, 0, ident).real(), 3.0,
              1e-10);
  EXPECT_NEAR(pairing_trace(cl, vanti, 0, 0, cr, vanti, 0, 0, ident).real(), 1.0,
              1e-10);
}
