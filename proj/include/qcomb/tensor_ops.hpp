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

#ifndef QCOMB_TENSOR_OPS_HPP
#define QCOMB_TENSOR_OPS_HPP

#include <numeric>
#include <vector>

#include "qcomb/common.hpp"

namespace qcomb {

// Operators on (C^d)^{tensor m}. Leg 0 is the most significant digit of
// the row/column index. A permutation sigma is stored as sigma[k] = image
// of leg k; the induced unitary acts as
//   psi(sigma) |x_0 .. x_{m-1}> = |y_0 .. y_{m-1}>,  y_{sigma[k]} = x_k.

inline std::vector<int> leg_strides(int m, int d) {
  std::vector<int> s(m);
  int acc = 1;
  for (int k = m - 1; k >= 0; --k) {
    s[k] = acc;
    acc *= d;
  }
  return s;
}

// Row-index relabeling table for psi(sigma): out[r] = r' such that
// psi(sigma) e_r = e_{r'}.
inline std::vector<int> perm_index_table(const std::vector<int>& sigma, int d) {
  int m = static_cast<int>(sigma.size());
  auto st = leg_strides(m, d);
  int dim = static_cast<int>(ipow(d, m));
  std::vector<int> out(dim);
  std::vector<int> digits(m);
  for (int r = 0; r < dim; ++r) {
    int t = r;
    for (int k = 0; k < m; ++k) {
      digits[k] = t / st[k];
      t %= st[k];
    }
    int rp = 0;
    for (int k = 0; k < m; ++k) rp += digits[k] * st[sigma[k]];
    out[r] = rp;
  }
  return out;
}

inline MatrixXcd perm_op(const std::vector<int>& sigma, int d) {
  auto tab = perm_index_table(sigma, d);
  MatrixXcd P = MatrixXcd::Zero(tab.size(), tab.size());
  for (size_t r = 0; r < tab.size(); ++r) P(tab[r], r) = 1.0;
  return P;
}

// psi(sigma) * U computed as a row relabeling, O(rows * cols).
inline MatrixXcd perm_apply_left(const std::vector<int>& sigma, int d,
                                 const MatrixXcd& U) {
  auto tab = perm_index_table(sigma, d);
  QCOMB_REQUIRE(static_cast<int>(tab.size()) == U.rows(), "perm_apply_left: size");
  MatrixXcd out(U.rows(), U.cols());
  for (size_t r = 0; r < tab.size(); ++r) out.row(tab[r]) = U.row(r);
  return out;
}

// psi(sigma) M psi(sigma)^{-1}.
inline MatrixXcd conjugate_by_perm(const std::vector<int>& sigma, int d,
                                   const MatrixXcd& M) {
  auto tab = perm_index_table(sigma, d);
  QCOMB_REQUIRE(static_cast<int>(tab.size()) == M.rows() && M.rows() == M.cols(),
                "conjugate_by_perm: size");
  MatrixXcd out(M.rows(), M.cols());
  for (size_t r = 0; r < tab.size(); ++r)
    for (size_t c = 0; c < tab.size(); ++c) out(tab[r], tab[c]) = M(r, c);
  return out;
}

inline std::vector<int> cyclic_shift(int m, int offset) {
  std::vector<int> sigma(m);
  for (int k = 0; k < m; ++k) sigma[k] = ((k + offset) % m + m) % m;
  return sigma;
}

inline int perm_cycles(const std::vector<int>& sigma) {
  int m = static_cast<int>(sigma.size()), c = 0;
  std::vector<char> seen(m, 0);
  for (int k = 0; k < m; ++k) {
    if (seen[k]) continue;
    ++c;
    for (int j = k; !seen[j]; j = sigma[j]) seen[j] = 1;
  }
  return c;
}

inline std::vector<int> perm_inverse(const std::vector<int>& sigma) {
  std::vector<int> inv(sigma.size());
  for (size_t k = 0; k < sigma.size(); ++k) inv[sigma[k]] = static_cast<int>(k);
  return inv;
}

inline std::vector<int> perm_compose(const std::vector<int>& a,
                                     const std::vector<int>& b) {
  // (a o b)[k] = a[b[k]]
  std::vector<int> c(a.size());
  for (size_t k = 0; k < a.size(); ++k) c[k] = a[b[k]];
  return c;
}

// Partial trace over the given legs of an operator on m legs of local
// dimension d. Remaining legs keep their relative order.
inline MatrixXcd partial_trace(const MatrixXcd& M, int m, int d,
                               const std::vector<int>& traced) {
  std::vector<char> is_traced(m, 0);
  for (int k : traced) is_traced[k] = 1;
  std::vector<int> kept;
  for (int k = 0; k < m; ++k)
    if (!is_traced[k]) kept.push_back(k);
  auto st = leg_strides(m, d);
  int nk = static_cast<int>(kept.size());
  int nt = m - nk;
  int dim_k = static_cast<int>(ipow(d, nk));
  int dim_t = static_cast<int>(ipow(d, nt));
  std::vector<int> tlegs;
  for (int k = 0; k < m; ++k)
    if (is_traced[k]) tlegs.push_back(k);

  MatrixXcd out = MatrixXcd::Zero(dim_k, dim_k);
  std::vector<int> kd(nk), td(nt);
  for (int rk = 0; rk < dim_k; ++rk) {
    int t = rk;
    for (int a = nk - 1; a >= 0; --a) {
      kd[a] = t % d;
      t /= d;
    }
    for (int ck = 0; ck < dim_k; ++ck) {
      int u = ck;
      std::vector<int> kc(nk);
      for (int a = nk - 1; a >= 0; --a) {
        kc[a] = u % d;
        u /= d;
      }
      cxd acc = 0.0;
      for (int tv = 0; tv < dim_t; ++tv) {
        int x = tv;
        for (int a = nt - 1; a >= 0; --a) {
          td[a] = x % d;
          x /= d;
        }
        int row = 0, col = 0;
        for (int a = 0; a < nk; ++a) {
          row += kd[a] * st[kept[a]];
          col += kc[a] * st[kept[a]];
        }
        for (int a = 0; a < nt; ++a) {
          row += td[a] * st[tlegs[a]];
          col += td[a] * st[tlegs[a]];
        }
        acc += M(row, col);
      }
      out(rk, ck) = acc;
    }
  }
  return out;
}

inline MatrixXcd kron(const MatrixXcd& A, const MatrixXcd& B) {
  MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

inline MatrixXcd kron_all(const std::vector<MatrixXcd>& ms) {
  QCOMB_REQUIRE(!ms.empty(), "kron_all: empty");
  MatrixXcd K = ms[0];
  for (size_t i = 1; i < ms.size(); ++i) K = kron(K, ms[i]);
  return K;
}

}  // namespace qcomb

#endif  // QCOMB_TENSOR_OPS_HPP
