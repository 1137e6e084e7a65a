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

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nbspec/configuration.hpp"
#include "nbspec/multigraph.hpp"

namespace nbspec {

// Sparse 0/1 non-backtracking operator, stored row-wise. Indices are
// half-edges (matching form) or directed edges (multigraph form).
class NBMatrix {
 public:
  enum class IndexKind { HalfEdge, DirectedEdge };

  NBMatrix(IndexKind kind, std::vector<std::vector<std::uint32_t>> rows);

  IndexKind kind() const { return kind_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<std::uint32_t>& row(std::size_t e) const { return rows_[e]; }

  // y = B x and y = B^T x. Buffers must hold dimension() doubles.
  void apply(const double* x, double* y) const;
  void apply_transpose(const double* x, double* y) const;

  Eigen::MatrixXd dense() const;

 private:
  IndexKind kind_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

// B = M N on half-edges: B_ef = 1 iff sigma(e) and f share a vertex and
// f != sigma(e). Each row has exactly d-1 entries.
NBMatrix nb_from_matching(const HalfEdgeSpace& space, const Matching& sigma);

// Directed-edge form: B_ef = 1 iff head(e) = tail(f) and f != inverse(e).
NBMatrix nb_from_multigraph(const BaseMultigraph& x);

// Strong connectivity of the directed graph of B.
bool is_irreducible(const NBMatrix& b);

// Collatz-Wielandt iteration on B + I; requires irreducibility.
double perron_eigenvalue(const NBMatrix& b, double tol, std::size_t max_iters);

// Spectrum of B predicted from the adjacency spectrum of a d-regular graph:
// 2n quadratic roots of z^2 - mu z + (d-1) plus r = n(d-2)/2 copies each of
// +1 and -1. Sorted by modulus descending, then real, then imaginary part.
std::vector<std::complex<double>> ihara_bass_spectrum(
    const std::vector<double>& adjacency_eigs, std::size_t n, std::size_t d);

// Compares the predicted spectrum with the dense eigenvalues of B by greedy
// multiset matching; optionally reports the worst pairwise distance.
bool verify_ihara_bass(const AdjacencyMatrix& a, const NBMatrix& b, double tol,
                       double* worst_residual = nullptr);

// Bisection on rho in [1, max_row_sum] for the smallest growth rate with
// ||B^k delta_e||_1 <= C rho^k for all k <= 2^K along doubling checkpoints;
// ell0 sets the first checked power.
double growth_bound_rho(const NBMatrix& b, std::size_t ell0);

// Dense N (same-vertex, distinct-index indicator) and K = (d-1) 1 1^* - N.
Eigen::MatrixXi n_matrix(const HalfEdgeSpace& space);
Eigen::MatrixXi k_matrix(const HalfEdgeSpace& space);

// Maps an adjacency eigenvalue bound to the matching modulus bound for B:
// sqrt(d-1) below the spectral threshold, else the larger quadratic root.
double nb_modulus_from_adjacency(double x, std::size_t d);

}  // namespace nbspec
