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

#ifndef QCOMB_MODEL_REGISTRY_HPP
#define QCOMB_MODEL_REGISTRY_HPP

#include <map>
#include <tuple>
#include <vector>

#include "qcomb/irrep.hpp"

namespace qcomb {

// Concrete matrix model of a U(d) irrep: generator matrices for the
// complexified Lie algebra basis E_ab. The basis is weight-adapted, so
// every Cartan element E_aa is diagonal with integer entries.
struct IrrepModel {
  IrrepLabel label;
  int d = 0;
  int dim = 0;
  std::vector<MatrixXcd> gens;          // gens[a*d+b] = E_ab
  std::vector<std::vector<int>> weights;  // weight vector per basis state

  const MatrixXcd& gen(int a, int b) const { return gens[a * d + b]; }
};

// Action of E_ab on a single tensor leg.
inline MatrixXcd leg_generator(LegKind leg, int a, int b, int d) {
  MatrixXcd g = MatrixXcd::Zero(d, d);
  if (leg == LegKind::Defining)
    g(a, b) = 1.0;
  else
    g(b, a) = -1.0;  // conjugate rep: E_ab -> -e_ba
  return g;
}

namespace detail {

// Delta_ab = E_ab^{parent} (x) 1_d + 1 (x) g_ab^{leg}, dense.
inline MatrixXcd embedded_generator(const IrrepModel& parent, LegKind leg,
                                    int a, int b) {
  int d = parent.d, dp = parent.dim;
  MatrixXcd out = MatrixXcd::Zero(dp * d, dp * d);
  const MatrixXcd& A = parent.gen(a, b);
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j < dp; ++j) {
      cxd v = A(i, j);
      if (v != 0.0)
        for (int x = 0; x < d; ++x) out(i * d + x, j * d + x) += v;
    }
  MatrixXcd g = leg_generator(leg, a, b, d);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      cxd v = g(x, y);
      if (v != 0.0)
        for (int i = 0; i < dp; ++i) out(i * d + x, i * d + y) += v;
    }
  return out;
}

// Quadratic Casimir of the combined action, assembled without matrix
// products: Cas = (c_parent + c_leg) 1 + 2 sum_ab E_ab^{parent} (x) g_ba.
inline MatrixXcd embedded_casimir(const IrrepModel& parent, LegKind leg) {
  int d = parent.d, dp = parent.dim;
  int n = dp * d;
  double c0 = static_cast<double>(casimir_value(parent.label, d)) +
              static_cast<double>(d);  // defining and conjugate both have c = d
  MatrixXcd out = MatrixXcd::Identity(n, n) * c0;
  // mixed term: 2 sum_ab A_ab (x) g_ba
  //   defining:  [(i,x),(j,y)] += 2 * A_{y x}[i,j]
  //   conjugate: [(i,x),(j,y)] -= 2 * A_{x y}[i,j]
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j < dp; ++j)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          cxd v = (leg == LegKind::Defining) ? parent.gen(y, x)(i, j)
                                             : -parent.gen(x, y)(i, j);
          if (v != 0.0) out(i * d + x, j * d + y) += 2.0 * v;
        }
  return out;
}

inline std::vector<int> weight_of_vector(const std::vector<MatrixXcd>& cartans,
                                         const VectorXcd& v, double* max_dev) {
  std::vector<int> w(cartans.size());
  for (size_t a = 0; a < cartans.size(); ++a) {
    cxd val = v.dot(cartans[a] * v);  // v^dagger C v
    double re = val.real();
    int r = static_cast<int>(std::lround(re));
    double dev = std::abs(re - r) + std::abs(val.imag());
    if (max_dev && dev > *max_dev) *max_dev = dev;
    w[a] = r;
  }
  return w;
}

// Rotate an orthonormal basis (columns of P, coordinates given by the
// compressed Cartans) into a weight basis: eigenbasis of a generic integer
// combination of the Cartan operators, sorted by weight, lex descending.
inline void rotate_to_weight_basis(MatrixXcd& P,
                                   const std::vector<MatrixXcd>& cartans_full,
                                   std::vector<std::vector<int>>* weights_out) {
  int d = static_cast<int>(cartans_full.size());
  int dc = static_cast<int>(P.cols());
  std::vector<MatrixXcd> W(d);
  for (int a = 0; a < d; ++a) W[a] = P.adjoint() * cartans_full[a] * P;
  // Generic separating combination: weights are bounded integers, so a
  // base-B positional encoding separates distinct weight vectors.
  double maxw = 1.0;
  for (int a = 0; a < d; ++a)
    maxw = std::max(maxw, W[a].cwiseAbs().maxCoeff());
  double B = 2.0 * (maxw + 2.0);
  MatrixXcd G = MatrixXcd::Zero(dc, dc);
  double scale = 1.0;
  for (int a = d - 1; a >= 0; --a) {
    G += scale * W[a];
    scale *= B;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
  MatrixXcd Y = es.eigenvectors();
  MatrixXcd Pw = P * Y;

  std::vector<std::vector<int>> w(dc);
  double dev = 0.0;
  for (int k = 0; k < dc; ++k) {
    VectorXcd col = Y.col(k);
    std::vector<int> wk(d);
    for (int a = 0; a < d; ++a) {
      cxd val = col.dot(W[a] * col);
      wk[a] = static_cast<int>(std::lround(val.real()));
      dev = std::max(dev, std::abs(val.real() - wk[a]) + std::abs(val.imag()));
    }
    w[k] = std::move(wk);
  }
  QCOMB_REQUIRE(dev < 1e-6, "weight basis: non-integer Cartan value, dev=" << dev);

  std::vector<int> order(dc);
  for (int k = 0; k < dc; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return w[y] < w[x]; });  // lex descending
  MatrixXcd Ps(P.rows(), dc);
  std::vector<std::vector<int>> ws(dc);
  for (int k = 0; k < dc; ++k) {
    Ps.col(k) = Pw.col(order[k]);
    ws[k] = w[order[k]];
  }
  // Phase convention: largest-magnitude entry real positive.
  for (int k = 0; k < dc; ++k) {
    int arg = 0;
    double best = 0.0;
    for (int i = 0; i < Ps.rows(); ++i) {
      double a = std::abs(Ps(i, k));
      if (a > best + 1e-12) {
        best = a;
        arg = i;
      }
    }
    cxd z = Ps(arg, k);
    Ps.col(k) *= std::conj(z) / std::abs(z);
  }
  P = Ps;
  if (weights_out) *weights_out = std::move(ws);
}

}  // namespace detail

struct EdgeIsometry {
  IrrepLabel parent, child;
  LegKind leg;
  MatrixXcd gamma;  // (d_parent * d) x d_child, isometric columns
};

// Global registry of irrep models and Clebsch-Gordan edge isometries.
// The first time a label is met, its model is frozen from the Casimir
// eigenspace in a deterministic weight basis; every later edge to the
// same label is aligned to that model by solving the (one-dimensional)
// intertwiner equation. This is what makes E^lambda_{T,T'} = U_T U_{T'}^+
// an exact matrix-unit system across different paths and chains.
class ModelRegistry {
 public:
  explicit ModelRegistry(int d) : d_(d) {
    IrrepModel triv;
    triv.label = IrrepLabel::trivial(d);
    triv.d = d;
    triv.dim = 1;
    triv.gens.assign(d * d, MatrixXcd::Zero(1, 1));
    triv.weights = {std::vector<int>(d, 0)};
    models_[triv.label] = std::move(triv);
  }

  int d() const { return d_; }

  bool has_model(const IrrepLabel& l) const { return models_.count(l) > 0; }

  const IrrepModel& model(const IrrepLabel& l) const {
    auto it = models_.find(l);
    QCOMB_REQUIRE(it != models_.end(), "no model registered for " << l.str());
    return it->second;
  }

  const MatrixXcd& edge_isometry(const IrrepLabel& parent, LegKind leg,
                                 const IrrepLabel& child) {
    auto key = std::make_tuple(parent, static_cast<int>(leg), child);
    auto it = edges_.find(key);
    if (it != edges_.end()) return it->second;
    MatrixXcd gamma = build_edge(parent, leg, child);
    return edges_.emplace(key, std::move(gamma)).first->second;
  }

 private:
  MatrixXcd build_edge(const IrrepLabel& parent, LegKind leg,
                       const IrrepLabel& child) {
    QCOMB_REQUIRE(edge_multiplicity(parent, leg, child, d_) == 1,
                  "no edge " << parent.str() << " -> " << child.str());
    const IrrepModel& pm = model(parent);
    int dp = pm.dim;
    int dc = static_cast<int>(weyl_dim(child, d_));
    MatrixXcd cas = detail::embedded_casimir(pm, leg);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(cas);
    double target = static_cast<double>(casimir_value(child, d_));

    std::vector<int> sel;
    for (int k = 0; k < dp * d_; ++k)
      if (std::abs(es.eigenvalues()(k) - target) < 1e-6) sel.push_back(k);
    QCOMB_REQUIRE(static_cast<int>(sel.size()) == dc,
                  "Casimir eigenspace for " << child.str() << " has dim "
                  << sel.size() << ", expected " << dc);
    MatrixXcd P(dp * d_, dc);
    for (int k = 0; k < dc; ++k) P.col(k) = es.eigenvectors().col(sel[k]);

    std::vector<MatrixXcd> cartans(d_);
    for (int a = 0; a < d_; ++a)
      cartans[a] = detail::embedded_generator(pm, leg, a, a);
    std::vector<std::vector<int>> wts;
    detail::rotate_to_weight_basis(P, cartans, &wts);

    if (!has_model(child)) {
      IrrepModel cm;
      cm.label = child;
      cm.d = d_;
      cm.dim = dc;
      cm.gens.resize(d_ * d_);
      for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b)
          cm.gens[a * d_ + b] =
              P.adjoint() * detail::embedded_generator(pm, leg, a, b) * P;
      cm.weights = wts;
      models_[child] = std::move(cm);
      return P;
    }

    // Align the eigenspace with the registered model: solve X A_ab = B_ab X.
    const IrrepModel& cm = model(child);
    std::vector<MatrixXcd> Bg(d_ * d_);
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b)
        Bg[a * d_ + b] =
            P.adjoint() * detail::embedded_generator(pm, leg, a, b) * P;

    // X[i,j] can be nonzero only when the weights match; both bases are
    // weight-sorted so the unknown count is small.
    std::vector<std::pair<int, int>> unknowns;
    std::map<std::pair<int, int>, int> uidx;
    for (int i = 0; i < dc; ++i)
      for (int j = 0; j < dc; ++j)
        if (wts[i] == cm.weights[j]) {
          uidx[{i, j}] = static_cast<int>(unknowns.size());
          unknowns.emplace_back(i, j);
        }
    int nu = static_cast<int>(unknowns.size());
    QCOMB_REQUIRE(nu > 0, "intertwiner: empty weight overlap for " << child.str());

    // Normal equations of the linear system (X A_ab - B_ab X = 0 for all ab).
    MatrixXcd M = MatrixXcd::Zero(nu, nu);
    VectorXcd row = VectorXcd::Zero(nu);
    for (int a = 0; a < d_; ++a)
      for (int b = 0; b < d_; ++b) {
        if (a == b) continue;  // Cartan equations hold by weight matching
        const MatrixXcd& A = cm.gen(a, b);
        const MatrixXcd& Bm = Bg[a * d_ + b];
        for (int i = 0; i < dc; ++i)
          for (int j = 0; j < dc; ++j) {
            row.setZero();
            bool any = false;
            for (int k = 0; k < dc; ++k) {
              auto it = uidx.find({i, k});
              if (it != uidx.end() && A(k, j) != 0.0) {
                row(it->second) += A(k, j);
                any = true;
              }
              auto it2 = uidx.find({k, j});
              if (it2 != uidx.end() && Bm(i, k) != 0.0) {
                row(it2->second) -= Bm(i, k);
                any = true;
              }
            }
            if (any) M.noalias() += row.conjugate() * row.transpose();
          }
      }
    Eigen::SelfAdjointEigenSolver<MatrixXcd> ies(M);
    QCOMB_REQUIRE(ies.eigenvalues()(0) < 1e-8,
                  "intertwiner: no null vector, lambda_min=" << ies.eigenvalues()(0));
    if (nu > 1)
      QCOMB_REQUIRE(ies.eigenvalues()(1) > 1e-6,
                    "intertwiner space dimension != 1 for " << child.str());
    MatrixXcd X = MatrixXcd::Zero(dc, dc);
    for (int u = 0; u < nu; ++u)
      X(unknowns[u].first, unknowns[u].second) = ies.eigenvectors()(u, 0);

    double scale = std::sqrt((X.adjoint() * X).trace().real() / dc);
    X /= scale;
    QCOMB_REQUIRE((X.adjoint() * X - MatrixXcd::Identity(dc, dc)).norm() < 1e-8,
                  "intertwiner not unitary for " << child.str());
    // Phase: first nonzero entry (column-major scan) real positive.
    for (int j = 0; j < dc; ++j) {
      bool done = false;
      for (int i = 0; i < dc; ++i) {
        if (std::abs(X(i, j)) > 1e-6) {
          X *= std::conj(X(i, j)) / std::abs(X(i, j));
          done = true;
          break;
        }
      }
      if (done) break;
    }
    return P * X;
  }

  int d_;
  std::map<IrrepLabel, IrrepModel> models_;
  std::map<std::tuple<IrrepLabel, int, IrrepLabel>, MatrixXcd> edges_;
};

// Diagnostic residuals for a model; used by the test suite.
struct ModelResiduals {
  double commutation = 0.0;
  double casimir = 0.0;
  double cartan_integrality = 0.0;
};

inline ModelResiduals validate_model(const IrrepModel& m) {
  ModelResiduals r;
  int d = m.d;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          MatrixXcd lhs = m.gen(a, b) * m.gen(c, e) - m.gen(c, e) * m.gen(a, b);
          MatrixXcd rhs = MatrixXcd::Zero(m.dim, m.dim);
          if (b == c) rhs += m.gen(a, e);
          if (e == a) rhs -= m.gen(c, b);
          r.commutation = std::max(r.commutation, (lhs - rhs).norm());
        }
  MatrixXcd cas = MatrixXcd::Zero(m.dim, m.dim);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) cas += m.gen(a, b) * m.gen(b, a);
  double cv = static_cast<double>(casimir_value(m.label, d));
  r.casimir = (cas - cv * MatrixXcd::Identity(m.dim, m.dim)).norm();
  for (int a = 0; a < d; ++a) {
    MatrixXcd diag = m.gen(a, a);
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < m.dim; ++j) {
        double ref = (i == j) ? static_cast<double>(m.weights[i][a]) : 0.0;
        r.cartan_integrality =
            std::max(r.cartan_integrality, std::abs(diag(i, j) - ref));
      }
  }
  return r;
}

inline double validate_edge(const ModelRegistry& reg, const IrrepModel& parent,
                            LegKind leg, const IrrepModel& child,
                            const MatrixXcd& gamma) {
  double res = (gamma.adjoint() * gamma -
                MatrixXcd::Identity(child.dim, child.dim)).norm();
  for (int a = 0; a < parent.d; ++a)
    for (int b = 0; b < parent.d; ++b) {
      MatrixXcd delta = detail::embedded_generator(parent, leg, a, b);
      res = std::max(res, (gamma.adjoint() * delta * gamma - child.gen(a, b)).norm());
    }
  (void)reg;
  return res;
}

}  // namespace qcomb

#endif  // QCOMB_MODEL_REGISTRY_HPP
