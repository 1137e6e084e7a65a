// Copyright 2026 The nbspec authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbspec/nonbacktracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nbspec/errors.hpp"
#include "nbspec/spectra.hpp"

namespace nbspec {

NBMatrix::NBMatrix(IndexKind kind, std::vector<std::vector<std::uint32_t>> rows)
    : kind_(kind), rows_(std::move(rows)) {
  for (const auto& row : rows_) {
    for (std::uint32_t f : row) {
      if (f >= rows_.size()) {
        throw DimensionMismatchError("column index out of range in sparse row");
      }
    }
  }
}

void NBMatrix::apply(const double* x, double* y) const {
  const std::size_t m = rows_.size();
  for (std::size_t e = 0; e < m; ++e) {
    double acc = 0.0;
    for (std::uint32_t f : rows_[e]) acc += x[f];
    y[e] = acc;
  }
}

void NBMatrix::apply_transpose(const double* x, double* y) const {
  const std::size_t m = rows_.size();
  std::fill(y, y + m, 0.0);
  for (std::size_t e = 0; e < m; ++e) {
    const double xe = x[e];
    if (xe == 0.0) continue;
    for (std::uint32_t f : rows_[e]) y[f] += xe;
  }
}

Eigen::MatrixXd NBMatrix::dense() const {
  const auto m = static_cast<Eigen::Index>(rows_.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    for (std::uint32_t f : rows_[static_cast<std::size_t>(e)]) {
      out(e, static_cast<Eigen::Index>(f)) += 1.0;
    }
  }
  return out;
}

NBMatrix nb_from_matching(const HalfEdgeSpace& space, const Matching& sigma) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  const std::size_t m = space.size();
  std::vector<std::vector<std::uint32_t>> rows(m);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t y = sigma.at(e);
    const std::size_t v = space.vertex_of(y);
    rows[e].reserve(space.d > 0 ? space.d - 1 : 0);
    for (std::size_t i = 0; i < space.d; ++i) {
      const std::size_t f = space.first_at(v) + i;
      if (f != y) rows[e].push_back(static_cast<std::uint32_t>(f));
    }
  }
  return NBMatrix(NBMatrix::IndexKind::HalfEdge, std::move(rows));
}

NBMatrix nb_from_multigraph(const BaseMultigraph& x) {
  const std::size_t m = x.directed_edge_count();
  std::vector<std::vector<std::uint32_t>> rows(m);
  for (std::size_t e = 0; e < m; ++e) {
    const std::uint32_t inv = BaseMultigraph::inverse(static_cast<std::uint32_t>(e));
    const std::size_t head = x.actual_head(static_cast<std::uint32_t>(e));
    for (std::uint32_t f : x.out_edges(head)) {
      if (f != inv) rows[e].push_back(f);
    }
  }
  return NBMatrix(NBMatrix::IndexKind::DirectedEdge, std::move(rows));
}

namespace {

std::size_t bfs_count(const std::vector<std::vector<std::uint32_t>>& adj) {
  if (adj.empty()) return 0;
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t e = stack.back();
    stack.pop_back();
    for (std::uint32_t f : adj[e]) {
      if (!seen[f]) {
        seen[f] = 1;
        ++count;
        stack.push_back(f);
      }
    }
  }
  return count;
}

}  // namespace

bool is_irreducible(const NBMatrix& b) {
  const std::size_t m = b.dimension();
  if (m == 0) return false;
  std::vector<std::vector<std::uint32_t>> forward(m), backward(m);
  for (std::size_t e = 0; e < m; ++e) {
    forward[e] = b.row(e);
    for (std::uint32_t f : b.row(e)) {
      backward[f].push_back(static_cast<std::uint32_t>(e));
    }
  }
  if (m > 1) {
    bool any_edge = false;
    for (const auto& row : forward) {
      if (!row.empty()) {
        any_edge = true;
        break;
      }
    }
    if (!any_edge) return false;
  }
  return bfs_count(forward) == m && bfs_count(backward) == m;
}

double perron_eigenvalue(const NBMatrix& b, double tol, std::size_t max_iters) {
  if (!is_irreducible(b)) {
    throw ReducibleOperatorError("operator is not irreducible");
  }
  const std::size_t m = b.dimension();
  std::vector<double> x(m, 1.0 / static_cast<double>(m)), w(m, 0.0);
  double best_lo = 0.0;
  double best_hi = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    b.apply(x.data(), w.data());
    // Collatz-Wielandt bounds for B + I with strictly positive iterate.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double total = 0.0;
    for (std::size_t e = 0; e < m; ++e) {
      w[e] += x[e];
      const double ratio = w[e] / x[e];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      total += w[e];
    }
    best_lo = std::max(best_lo, lo);
    best_hi = std::min(best_hi, hi);
    if (best_hi - best_lo <= tol) {
      return 0.5 * (best_lo + best_hi) - 1.0;
    }
    for (std::size_t e = 0; e < m; ++e) x[e] = w[e] / total;
  }
  throw ConvergenceFailureError("Perron iteration did not reach tol " +
                                std::to_string(tol));
}

std::vector<std::complex<double>> ihara_bass_spectrum(
    const std::vector<double>& adjacency_eigs, std::size_t n, std::size_t d) {
  if (adjacency_eigs.size() != n) {
    throw DimensionMismatchError("expected " + std::to_string(n) +
                                 " adjacency eigenvalues, got " +
                                 std::to_string(adjacency_eigs.size()));
  }
  if ((n * d) % 2 != 0) {
    throw PreconditionFailedError("n*d must be even");
  }
  const std::size_t r = n * d / 2 - n;
  std::vector<std::complex<double>> out;
  out.reserve(n * d);
  const double q = static_cast<double>(d) - 1.0;
  for (double mu : adjacency_eigs) {
    const double disc = mu * mu - 4.0 * q;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      out.emplace_back(0.5 * (mu + s), 0.0);
      out.emplace_back(0.5 * (mu - s), 0.0);
    } else {
      const double s = std::sqrt(-disc);
      out.emplace_back(0.5 * mu, 0.5 * s);
      out.emplace_back(0.5 * mu, -0.5 * s);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    out.emplace_back(1.0, 0.0);
    out.emplace_back(-1.0, 0.0);
  }
  std::sort(out.begin(), out.end(),
            [](const std::complex<double>& a, const std::complex<double>& c) {
              const double ma = std::abs(a), mc = std::abs(c);
              if (ma != mc) return ma > mc;
              if (a.real() != c.real()) return a.real() < c.real();
              return a.imag() < c.imag();
            });
  return out;
}

bool verify_ihara_bass(const AdjacencyMatrix& a, const NBMatrix& b, double tol,
                       double* worst_residual) {
  const std::size_t n = a.dimension();
  std::size_t d = 0;
  if (n > 0) d = static_cast<std::size_t>(a.row_sums()[0]);
  if (!is_simple_regular(a, d) || d < 3) {
    throw NotRegularError("adjacency matrix is not simple d-regular with d >= 3");
  }
  if (worst_residual != nullptr) {
    *worst_residual = std::numeric_limits<double>::infinity();
  }
  if (b.dimension() != n * d) return false;

  Eigen::MatrixXd adense(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      adense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(a(i, j));
    }
  }
  const std::vector<double> mu = sym_eigs_dense_matrix(adense);
  std::vector<std::complex<double>> predicted = ihara_bass_spectrum(mu, n, d);
  std::vector<std::complex<double>> actual = nonsym_eigs_dense(b.dense());

  std::vector<char> used(actual.size(), 0);
  double worst = 0.0;
  for (const auto& p : predicted) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = actual.size();
    for (std::size_t j = 0; j < actual.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(actual[j] - p);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    used[best_j] = 1;
    worst = std::max(worst, best);
  }
  if (worst_residual != nullptr) *worst_residual = worst;
  return worst <= tol;
}

double growth_bound_rho(const NBMatrix& b, std::size_t ell0) {
  if (ell0 < 1) {
    throw PreconditionFailedError("ell0 must be at least 1");
  }
  constexpr std::size_t kCheck = 64;
  const std::size_t m = b.dimension();
  // Column sums of B^k evolve as w <- B^T w from the all-ones vector.
  std::vector<double> w(m, 1.0), next(m, 0.0);
  std::vector<double> sup_per_k;
  sup_per_k.reserve(kCheck);
  for (std::size_t k = 1; k <= kCheck; ++k) {
    b.apply_transpose(w.data(), next.data());
    w.swap(next);
    sup_per_k.push_back(*std::max_element(w.begin(), w.end()));
  }
  const double rho1 = perron_eigenvalue(b, 1e-9, 200000);
  double hi = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    hi = std::max(hi, static_cast<double>(b.row(e).size()));
  }
  hi = std::max(hi, rho1);
  const auto admissible = [&](double rho) {
    for (std::size_t k = ell0; k <= kCheck; ++k) {
      if (sup_per_k[k - 1] > std::pow(rho, static_cast<double>(k))) return false;
    }
    return true;
  };
  if (admissible(rho1)) return rho1;
  double lo = rho1;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (admissible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Eigen::MatrixXi n_matrix(const HalfEdgeSpace& space) {
  const auto m = static_cast<Eigen::Index>(space.size());
  Eigen::MatrixXi out = Eigen::MatrixXi::Zero(m, m);
  for (Eigen::Index e = 0; e < m; ++e) {
    for (Eigen::Index f = 0; f < m; ++f) {
      if (e != f && space.vertex_of(static_cast<std::size_t>(e)) ==
                        space.vertex_of(static_cast<std::size_t>(f))) {
        out(e, f) = 1;
      }
    }
  }
  return out;
}

Eigen::MatrixXi k_matrix(const HalfEdgeSpace& space) {
  const auto m = static_cast<Eigen::Index>(space.size());
  const int q = static_cast<int>(space.d) - 1;
  Eigen::MatrixXi out = Eigen::MatrixXi::Constant(m, m, q);
  return out - n_matrix(space);
}

double nb_modulus_from_adjacency(double x, std::size_t d) {
  const double q = static_cast<double>(d) - 1.0;
  const double threshold = 2.0 * std::sqrt(q);
  if (x <= threshold) return std::sqrt(q);
  return 0.5 * (x + std::sqrt(x * x - 4.0 * q));
}

}  // namespace nbspec
