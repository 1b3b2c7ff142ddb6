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

#ifndef QCOMB_BRATTELI_HPP
#define QCOMB_BRATTELI_HPP

#include <map>
#include <string>
#include <vector>

#include "qcomb/irrep.hpp"

namespace qcomb {

struct ChainSpec {
  int d = 0;
  std::vector<LegKind> legs;

  bool operator<(const ChainSpec& o) const {
    if (d != o.d) return d < o.d;
    return legs < o.legs;
  }
  bool operator==(const ChainSpec& o) const { return d == o.d && legs == o.legs; }

  std::string str() const {
    std::string s = "d" + std::to_string(d) + ":[";
    for (size_t i = 0; i < legs.size(); ++i) {
      if (i) s += ",";
      s += leg_name(legs[i]);
    }
    return s + "]";
  }
};

// A path is the sequence of vertex indices, one per level 0..k. Edge
// choices are implicit because every edge has multiplicity 1.
using Path = std::vector<int>;

// Leveled branching graph for a chain of defining / conjugate-defining
// legs. Level k holds every label reachable in k steps, in canonical
// order; paths index the Gelfand-Tsetlin basis of the multiplicity
// spaces.
struct BrattelDiagram {
  ChainSpec spec;
  std::vector<std::vector<IrrepLabel>> levels;          // levels[k][v]
  std::vector<std::map<IrrepLabel, int>> index;         // label -> v per level
  std::vector<std::vector<std::vector<int>>> parents;   // [k][v] -> level k-1
  std::vector<std::vector<std::vector<int>>> children;  // [k][v] -> level k+1
  std::vector<std::vector<std::vector<Path>>> paths;    // [k][v][t]
  std::vector<std::vector<int64_t>> dims;               // weyl_dim per vertex

  int num_levels() const { return static_cast<int>(levels.size()); }
  int top() const { return num_levels() - 1; }

  int vertex_index(int level, const IrrepLabel& l) const {
    auto it = index[level].find(l);
    QCOMB_REQUIRE(it != index[level].end(),
                  "vertex " << l.str() << " absent at level " << level);
    return it->second;
  }

  int num_paths(int level, int v) const {
    return static_cast<int>(paths[level][v].size());
  }

  // Index of the edge-removal image: given a path to (level, v), its
  // truncation is a path to the parent at level-1. Returns the parent
  // vertex and the index of the truncated path.
  std::pair<int, int> truncate_path(int level, int v, int t) const {
    const Path& p = paths[level][v][t];
    int pv = p[level - 1];
    const auto& plist = paths[level - 1][pv];
    Path q(p.begin(), p.end() - 1);
    for (size_t i = 0; i < plist.size(); ++i)
      if (plist[i] == q) return {pv, static_cast<int>(i)};
    QCOMB_REQUIRE(false, "truncate_path: parent path not found");
    return {-1, -1};
  }

  // Index of the path obtained by appending vertex `child_v` at the next
  // level; returns -1 if there is no such edge.
  int extend_path(int level, int v, int t, int child_v) const {
    const auto& clist = paths[level + 1][child_v];
    Path q = paths[level][v][t];
    q.push_back(child_v);
    for (size_t i = 0; i < clist.size(); ++i)
      if (clist[i] == q) return static_cast<int>(i);
    return -1;
  }
};

inline BrattelDiagram build_bratteli(const ChainSpec& spec) {
  QCOMB_REQUIRE(spec.d >= 2, "build_bratteli: need d >= 2");
  QCOMB_REQUIRE(!spec.legs.empty(), "build_bratteli: empty leg list");
  BrattelDiagram B;
  B.spec = spec;
  int n = static_cast<int>(spec.legs.size());
  B.levels.resize(n + 1);
  B.index.resize(n + 1);
  B.parents.resize(n + 1);
  B.children.resize(n + 1);
  B.paths.resize(n + 1);
  B.dims.resize(n + 1);

  B.levels[0] = {IrrepLabel::trivial(spec.d)};
  B.index[0][B.levels[0][0]] = 0;
  B.parents[0] = {{}};
  B.paths[0] = {{Path{0}}};
  B.dims[0] = {1};

  for (int k = 1; k <= n; ++k) {
    std::map<IrrepLabel, std::vector<int>> next;  // child -> parent indices
    for (int v = 0; v < static_cast<int>(B.levels[k - 1].size()); ++v)
      for (const IrrepLabel& c : branch(B.levels[k - 1][v], spec.legs[k - 1], spec.d))
        next[c].push_back(v);

    for (auto& [label, pars] : next) {
      int idx = static_cast<int>(B.levels[k].size());
      B.levels[k].push_back(label);
      B.index[k][label] = idx;
      B.parents[k].push_back(pars);
      B.dims[k].push_back(weyl_dim(label, spec.d));
    }

    B.children[k - 1].assign(B.levels[k - 1].size(), {});
    for (int v = 0; v < static_cast<int>(B.levels[k].size()); ++v)
      for (int p : B.parents[k][v]) B.children[k - 1][p].push_back(v);

    // Paths extend parent paths; parent order then parent-path order keeps
    // the enumeration reproducible.
    B.paths[k].resize(B.levels[k].size());
    for (int v = 0; v < static_cast<int>(B.levels[k].size()); ++v)
      for (int p : B.parents[k][v])
        for (const Path& pp : B.paths[k - 1][p]) {
          Path q = pp;
          q.push_back(v);
          B.paths[k][v].push_back(std::move(q));
        }
  }
  B.children[n].assign(B.levels[n].size(), {});
  return B;
}

inline std::vector<Path> enumerate_paths(const BrattelDiagram& B, const IrrepLabel& lam) {
  int v = B.vertex_index(B.top(), lam);
  return B.paths[B.top()][v];
}

enum class Task { Transpose, Invert };

inline const char* task_name(Task t) {
  return t == Task::Transpose ? "transpose" : "invert";
}

// Chains for the two tasks, in the convention where the comb Choi matrix
// lives on P (x) I^n (x) O^n (x) F:
//   B_L acts on (I_1..I_n, F)  and  B_R acts on (P, O_1..O_n).
// Transposition carries the conjugate action on F and P; inversion is
// all-defining on both sides.
inline std::pair<ChainSpec, ChainSpec> chain_for_task(Task task, int d, int n) {
  QCOMB_REQUIRE(d >= 2 && n >= 1, "chain_for_task: need d >= 2, n >= 1");
  ChainSpec L, R;
  L.d = R.d = d;
  if (task == Task::Transpose) {
    L.legs.assign(n, LegKind::Defining);
    L.legs.push_back(LegKind::ConjDefining);
    R.legs.assign(1, LegKind::ConjDefining);
    for (int i = 0; i < n; ++i) R.legs.push_back(LegKind::Defining);
  } else {
    L.legs.assign(n + 1, LegKind::Defining);
    R.legs.assign(n + 1, LegKind::Defining);
  }
  return {L, R};
}

}  // namespace qcomb

#endif  // QCOMB_BRATTELI_HPP
