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

#ifndef QCOMB_IRREP_HPP
#define QCOMB_IRREP_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "qcomb/common.hpp"

namespace qcomb {

// Highest weight of a U(d) irrep: weakly decreasing integer vector of
// length d. Negative entries are allowed (mixed / staircase weights).
struct IrrepLabel {
  std::vector<int> w;

  IrrepLabel() = default;
  explicit IrrepLabel(std::vector<int> weights) : w(std::move(weights)) {}

  static IrrepLabel trivial(int d) { return IrrepLabel(std::vector<int>(d, 0)); }

  int d() const { return static_cast<int>(w.size()); }

  bool valid() const {
    if (w.empty()) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] < w[i + 1]) return false;
    return true;
  }

  int boxes() const {
    int s = 0;
    for (int x : w) s += x;
    return s;
  }

  // Canonical (deterministic) enumeration order: lexicographically
  // descending weights come first, so e.g. (2,0) precedes (1,1).
  bool operator<(const IrrepLabel& o) const { return o.w < w; }
  bool operator==(const IrrepLabel& o) const { return w == o.w; }
  bool operator!=(const IrrepLabel& o) const { return w != o.w; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(w[i]);
    }
    return s + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const IrrepLabel& l) {
  return os << l.str();
}

enum class LegKind { Defining, ConjDefining };

inline const char* leg_name(LegKind k) {
  return k == LegKind::Defining ? "def" : "conj";
}

// Pieri branching: tensoring an irrep with the defining rep adds one box
// (lambda + e_i), tensoring with its conjugate removes one (lambda - e_i).
// All edges are multiplicity-free for these legs. Result is in canonical
// order.
inline std::vector<IrrepLabel> branch(const IrrepLabel& lam, LegKind leg, int d) {
  QCOMB_REQUIRE(lam.d() == d, "branch: label length " << lam.d() << " != d " << d);
  QCOMB_REQUIRE(lam.valid(), "branch: invalid label " << lam.str());
  std::vector<IrrepLabel> out;
  for (int i = 0; i < d; ++i) {
    IrrepLabel child = lam;
    child.w[i] += (leg == LegKind::Defining) ? 1 : -1;
    if (child.valid()) out.push_back(child);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Multiplicity of `child` in `parent (x) leg`. Always 0 or 1 here; the
// general interface keeps the multiplicity slot for future leg kinds.
inline int edge_multiplicity(const IrrepLabel& parent, LegKind leg,
                             const IrrepLabel& child, int d) {
  auto kids = branch(parent, leg, d);
  return std::count(kids.begin(), kids.end(), child) > 0 ? 1 : 0;
}

// Weyl dimension formula, evaluated in exact integer arithmetic:
//   dim = prod_{i<j} (lam_i - lam_j + j - i) / (j - i).
inline int64_t weyl_dim(const IrrepLabel& lam, int d) {
  QCOMB_REQUIRE(lam.d() == d && lam.valid(), "weyl_dim: bad label " << lam.str());
  __int128 num = 1, den = 1;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      num *= lam.w[i] - lam.w[j] + j - i;
      den *= j - i;
    }
  QCOMB_REQUIRE(num % den == 0, "weyl_dim: non-integer result for " << lam.str());
  return static_cast<int64_t>(num / den);
}

// Quadratic Casimir eigenvalue c(lambda) = sum_i lam_i (lam_i + d + 1 - 2i),
// with i running 1..d. Distinct Pieri children of a common parent always
// have distinct values, separated by at least 2.
inline int64_t casimir_value(const IrrepLabel& lam, int d) {
  int64_t c = 0;
  for (int i = 1; i <= d; ++i) {
    int64_t li = lam.w[i - 1];
    c += li * (li + d + 1 - 2 * i);
  }
  return c;
}

}  // namespace qcomb

#endif  // QCOMB_IRREP_HPP
