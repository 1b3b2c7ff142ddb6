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
#include <random>

#include "qcomb/sdp_solver.hpp"
#include "qcomb/sdpa_io.hpp"

using namespace qcomb;

namespace {

MatrixXd rand_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = g(rng);
  return 0.5 * (A + A.transpose());
}

}  // namespace

TEST(SdpSolver, ScalarTrace) {
  SDPProblem p;
  p.dims = {1};
  p.objective = {MatrixXd::Identity(1, 1)};
  SDPConstraint c;
  c.terms.push_back({0, MatrixXd::Identity(1, 1)});
  c.rhs = 1.0;
  p.constraints.push_back(c);
  auto sol = solve_sdp(p);
  EXPECT_EQ(sol.status, SDPStatus::Optimal);
  EXPECT_NEAR(sol.pobj, 1.0, 1e-7);
  EXPECT_NEAR(sol.X[0](0, 0), 1.0, 1e-7);
}

TEST(SdpSolver, RandomFeasibleProblems) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    SDPProblem p;
    p.dims = {4, 3};
    p.objective = {rand_sym(4, rng), rand_sym(3, rng)};
    // Feasible by construction: b = A(X0) with X0 positive definite.
    std::vector<MatrixXd> x0;
    for (int d : p.dims) {
      MatrixXd r = rand_sym(d, rng);
      x0.push_back(r * r.transpose() + MatrixXd::Identity(d, d));
    }
    for (int k = 0; k < 6; ++k) {
      SDPConstraint c;
      double rhs = 0.0;
      for (int j = 0; j < 2; ++j) {
        MatrixXd A = rand_sym(p.dims[j], rng);
        rhs += (A.array() * x0[j].array()).sum();
        c.terms.push_back({j, A});
      }
      c.rhs = rhs;
      p.constraints.push_back(c);
    }
    auto sol = solve_sdp(p);
    ASSERT_EQ(sol.status, SDPStatus::Optimal) << "trial " << trial;
    auto kkt = check_kkt(p, sol);
    EXPECT_LT(kkt.primal_res, 1e-7);
    EXPECT_LT(kkt.dual_res, 1e-7);
    EXPECT_LT(kkt.gap, 1e-7);
    EXPECT_GT(kkt.min_eig_X, -1e-9);
    EXPECT_GT(kkt.min_eig_S, -1e-9);
    // weak duality in minimization form
    EXPECT_GE(sol.pobj - sol.dobj, -1e-7);
  }
}

TEST(SdpSolver, DependentConstraintsDropped) {
  SDPProblem p;
  p.dims = {2};
  p.objective = {MatrixXd::Identity(2, 2)};
  MatrixXd A = MatrixXd::Identity(2, 2);
  p.constraints.push_back({{{0, A}}, 2.0});
  p.constraints.push_back({{{0, (2.0 * A).eval()}}, 4.0});  // duplicate row
  auto sol = solve_sdp(p);
  EXPECT_EQ(sol.status, SDPStatus::Optimal);
  EXPECT_EQ(sol.dropped_constraints, 1);
  EXPECT_NEAR(sol.pobj, 2.0, 1e-7);
}

TEST(SdpSolver, KktFlagsPerturbation) {
  SDPProblem p;
  p.dims = {3};
  p.objective = {MatrixXd::Identity(3, 3)};
  SDPConstraint c;
  c.terms.push_back({0, MatrixXd::Identity(3, 3)});
  c.rhs = 1.0;
  p.constraints.push_back(c);
  auto sol = solve_sdp(p);
  ASSERT_EQ(sol.status, SDPStatus::Optimal);
  auto good = check_kkt(p, sol);
  EXPECT_LT(good.primal_res, 1e-7);
  sol.X[0] += 1e-3 * MatrixXd::Identity(3, 3);
  auto bad = check_kkt(p, sol);
  EXPECT_GT(bad.primal_res, 1e-4);
}

TEST(SdpaIo, RoundTripAndSolve) {
  std::mt19937_64 rng(5);
  SDPProblem p;
  p.dims = {3, 2};
  p.objective = {rand_sym(3, rng), rand_sym(2, rng)};
  std::vector<MatrixXd> x0;
  for (int d : p.dims) {
    MatrixXd r = rand_sym(d, rng);
    x0.push_back(r * r.transpose() + MatrixXd::Identity(d, d));
  }
  for (int k = 0; k < 4; ++k) {
    SDPConstraint c;
    double rhs = 0.0;
    for (int j = 0; j < 2; ++j) {
      MatrixXd A = rand_sym(p.dims[j], rng);
      rhs += (A.array() * x0[j].array()).sum();
      c.terms.push_back({j, A});
    }
    c.rhs = rhs;
    p.constraints.push_back(c);
  }
  std::string path = "sdpa_roundtrip_test.dat-s";
  export_sdpa(p, path);
  SDPProblem q = import_sdpa(path);
  ASSERT_EQ(q.dims, p.dims);
  ASSERT_EQ(q.constraints.size(), p.constraints.size());
  auto s1 = solve_sdp(p);
  auto s2 = solve_sdp(q);
  ASSERT_EQ(s1.status, SDPStatus::Optimal);
  ASSERT_EQ(s2.status, SDPStatus::Optimal);
  EXPECT_NEAR(s1.pobj, s2.pobj, 1e-6);
  std::remove(path.c_str());

  // Empty-constraint problems still produce a well-formed file.
  SDPProblem e;
  e.dims = {2};
  e.objective = {-MatrixXd::Identity(2, 2)};
  export_sdpa(e, path);
  SDPProblem e2 = import_sdpa(path);
  EXPECT_EQ(e2.constraints.size(), 0u);
  EXPECT_NEAR((e2.objective[0] - e.objective[0]).norm(), 0.0, 1e-14);
  std::remove(path.c_str());
}
