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

#ifndef QCOMB_COMMON_HPP
#define QCOMB_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcomb {

using cxd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kIsometryTol = 1e-12;
inline constexpr double kIntertwinerTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-10;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QCOMB_REQUIRE(cond, msg)                      \
  do {                                                \
    if (!(cond)) {                                    \
      std::ostringstream oss_;                        \
      oss_ << "qcomb: " << msg;                       \
      throw ::qcomb::Error(oss_.str());               \
    }                                                 \
  } while (0)

inline int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Hermitian part of a square matrix.
inline MatrixXcd herm(const MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

inline double herm_residual(const MatrixXcd& m) {
  return (m - m.adjoint()).norm();
}

}  // namespace qcomb

#endif  // QCOMB_COMMON_HPP
