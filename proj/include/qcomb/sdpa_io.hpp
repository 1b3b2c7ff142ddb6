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

#ifndef QCOMB_SDPA_IO_HPP
#define QCOMB_SDPA_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcomb/sdp_solver.hpp"

namespace qcomb {

// SDPA sparse format (".dat-s"). The file encodes
//   (P) min c^T x  s.t.  X(x) = sum_i x_i F_i - F_0 >= 0,
// whose dual  max <F_0, Y>  s.t.  <F_i, Y> = c_i, Y >= 0  is our primal
// with F_0 = -C (objective as "constraint 0"), F_i = A_i and c = b.
// Entries are written with 1-based upper-triangle indices, deterministic
// order: matrix index, block, row, column.

inline void export_sdpa(const SDPProblem& p, const std::string& path) {
  std::ofstream out(path);
  QCOMB_REQUIRE(out.good(), "export_sdpa: cannot open " << path);
  int m = static_cast<int>(p.constraints.size());
  int nb = static_cast<int>(p.dims.size());
  out << m << "\n" << nb << "\n";
  for (int j = 0; j < nb; ++j) out << p.dims[j] << (j + 1 < nb ? " " : "\n");
  char buf[64];
  for (int k = 0; k < m; ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", p.constraints[k].rhs);
    out << buf << (k + 1 < m ? " " : "");
  }
  out << "\n";
  auto emit = [&](int matno, int block, const MatrixXd& A) {
    for (int i = 0; i < A.rows(); ++i)
      for (int j = i; j < A.cols(); ++j)
        if (std::abs(A(i, j)) > 1e-14) {
          std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
          out << matno << " " << block + 1 << " " << i + 1 << " " << j + 1
              << " " << buf << "\n";
        }
  };
  for (int j = 0; j < nb; ++j) emit(0, j, (-p.objective[j]).eval());
  for (int k = 0; k < m; ++k)
    for (const auto& t : p.constraints[k].terms) emit(k + 1, t.block, t.A);
  QCOMB_REQUIRE(out.good(), "export_sdpa: write failure on " << path);
}

inline SDPProblem import_sdpa(const std::string& path) {
  std::ifstream in(path);
  QCOMB_REQUIRE(in.good(), "import_sdpa: cannot open " << path);
  auto next_data_line = [&](std::string& line) {
    while (std::getline(in, line)) {
      size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '"' || line[pos] == '*') continue;  // comment
      return true;
    }
    return false;
  };
  std::string line;
  QCOMB_REQUIRE(next_data_line(line), "import_sdpa: missing m");
  int m = std::stoi(line);
  QCOMB_REQUIRE(next_data_line(line), "import_sdpa: missing nblocks");
  int nb = std::stoi(line);
  QCOMB_REQUIRE(next_data_line(line), "import_sdpa: missing block sizes");
  SDPProblem p;
  {
    std::istringstream iss(line);
    for (int j = 0; j < nb; ++j) {
      std::string tok;
      iss >> tok;
      // strip braces/commas that some writers emit
      std::string digits;
      for (char c : tok)
        if (std::isdigit(c) || c == '-') digits += c;
      int sz = std::stoi(digits);
      p.dims.push_back(std::abs(sz));  // diagonal blocks handled densely
    }
  }
  QCOMB_REQUIRE(next_data_line(line), "import_sdpa: missing rhs");
  p.constraints.resize(m);
  {
    std::istringstream iss(line);
    for (int k = 0; k < m; ++k) iss >> p.constraints[k].rhs;
  }
  p.objective.resize(nb);
  for (int j = 0; j < nb; ++j)
    p.objective[j] = MatrixXd::Zero(p.dims[j], p.dims[j]);
  std::vector<std::map<int, MatrixXd>> terms(m);
  int matno, block, i, j;
  double v;
  while (in >> matno >> block >> i >> j >> v) {
    --block;
    --i;
    --j;
    if (matno == 0) {
      p.objective[block](i, j) = -v;
      p.objective[block](j, i) = -v;
    } else {
      auto& tm = terms[matno - 1];
      auto it = tm.find(block);
      if (it == tm.end())
        it = tm.emplace(block, MatrixXd::Zero(p.dims[block], p.dims[block])).first;
      it->second(i, j) = v;
      it->second(j, i) = v;
    }
  }
  for (int k = 0; k < m; ++k)
    for (auto& [blk, A] : terms[k]) p.constraints[k].terms.push_back({blk, A});
  return p;
}

}  // namespace qcomb

#endif  // QCOMB_SDPA_IO_HPP
