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

#ifndef QCOMB_RANDOM_COMB_HPP
#define QCOMB_RANDOM_COMB_HPP

#include "qcomb/choi_verify.hpp"
#include "qcomb/haar.hpp"

namespace qcomb {

// Random valid comb built directly as a Stinespring circuit: one Haar
// isometry per tooth, ancilla carried forward, final ancilla traced out.
// Independent of the symmetric ansatz; used as an oracle input.
inline ChoiMatrix random_full_comb(int d, int n, uint64_t seed) {
  guard_desk_scale(d, n);
  std::mt19937_64 rng(seed);
  int teeth = n + 1;

  // State vector over processed legs (P, I_1, O_1, I_2, .., O_n, F) and a
  // trailing ancilla factor.
  VectorXcd state = VectorXcd::Ones(1);
  int anc = 1;
  int legdim = 1;
  for (int i = 1; i <= teeth; ++i) {
    // Append the tooth input leg, entangled with the register copy.
    VectorXcd grown = VectorXcd::Zero(legdim * d * anc * d);
    for (int l = 0; l < legdim; ++l)
      for (int x = 0; x < d; ++x)
        for (int a = 0; a < anc; ++a)
          grown(((l * d + x) * anc + a) * d + x) = state(l * anc + a);
    // Apply a Haar isometry on (ancilla, input copy) -> (output leg, ancilla').
    int anc_next = anc * d;  // keep everything: output leg plus same-size memory
    MatrixXcd w = haar_isometry(d * anc_next, anc * d, rng);
    int ld = legdim * d;
    VectorXcd next = VectorXcd::Zero(ld * d * anc_next);
    for (int l = 0; l < ld; ++l) {
      VectorXcd in(anc * d);
      for (int k = 0; k < anc * d; ++k) in(k) = grown(l * anc * d + k);
      VectorXcd out = w * in;
      for (int k = 0; k < d * anc_next; ++k) next(l * d * anc_next + k) = out(k);
    }
    state = std::move(next);
    legdim = ld * d;
    anc = anc_next;
  }

  // rho = Tr_anc |state><state| on the interleaved legs.
  int m = 2 * teeth;
  MatrixXcd rho = MatrixXcd::Zero(legdim, legdim);
  for (int a = 0; a < anc; ++a) {
    VectorXcd col(legdim);
    for (int l = 0; l < legdim; ++l) col(l) = state(l * anc + a);
    rho.noalias() += col * col.adjoint();
  }

  // Reorder legs (P, I_1, O_1, .., I_n, O_n, F) -> (I^n, F, P, O^n).
  std::vector<int> sigma(m);
  for (int i = 1; i <= teeth; ++i) {
    int rcur = 2 * (i - 1), lcur = 2 * i - 1;
    sigma[rcur] = (i == 1) ? n + 1 : n + 1 + (i - 1);
    sigma[lcur] = (i == teeth) ? n : i - 1;
  }
  ChoiMatrix C;
  C.d = d;
  C.n = n;
  C.mat = conjugate_by_perm(sigma, d, rho);
  return C;
}

// Random feasible point of the symmetry-reduced ansatz: project a random
// valid comb onto the commutant basis (the Haar twirl of a comb is again
// a comb, and twirling is exactly this projection).
inline BlockSet random_feasible_blocks(const TaskGeometry& g, uint64_t seed) {
  ChoiMatrix C = random_full_comb(g.d, g.n, seed);
  return blocks_from_choi(g, C);
}

}  // namespace qcomb

#endif  // QCOMB_RANDOM_COMB_HPP
