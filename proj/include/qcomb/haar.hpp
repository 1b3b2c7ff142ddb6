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

#ifndef QCOMB_HAAR_HPP
#define QCOMB_HAAR_HPP

#include <random>

#include "qcomb/common.hpp"

namespace qcomb {

inline MatrixXcd ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXcd A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = cxd(g(rng), g(rng));
  return A;
}

// Haar-random isometry: thin QR of a Ginibre matrix with the R diagonal
// phase-corrected so the distribution is exactly invariant.
inline MatrixXcd haar_isometry(int rows, int cols, std::mt19937_64& rng) {
  QCOMB_REQUIRE(rows >= cols, "haar_isometry: rows < cols");
  MatrixXcd A = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<MatrixXcd> qr(A);
  MatrixXcd Q = qr.householderQ() * MatrixXcd::Identity(rows, cols);
  MatrixXcd R = Q.adjoint() * A;
  for (int j = 0; j < cols; ++j) {
    cxd r = R(j, j);
    double a = std::abs(r);
    Q.col(j) *= (a > 0) ? r / a : cxd(1.0, 0.0);
  }
  return Q;
}

inline MatrixXcd haar_unitary(int n, std::mt19937_64& rng) {
  return haar_isometry(n, n, rng);
}

}  // namespace qcomb

#endif  // QCOMB_HAAR_HPP
