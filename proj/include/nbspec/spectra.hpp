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
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nbspec/multigraph.hpp"

namespace nbspec {

enum class EigsMode { Dense, IterativeExtremal };

// Dense mode: full spectrum, descending. Iterative mode: extremal values by
// Lanczos with full reorthogonalization; for regular graphs the known Perron
// direction is deflated and {d, top two, bottom two} of the complement are
// returned, otherwise the four extremal values.
std::vector<double> sym_eigs(const AdjacencyMatrix& a, EigsMode mode);

// Full symmetric eigensolve of a dense matrix, descending.
std::vector<double> sym_eigs_dense_matrix(const Eigen::MatrixXd& a);

// Dense nonsymmetric eigensolve, sorted by modulus descending then real then
// imaginary part; guarded to dimension <= 4000.
std::vector<std::complex<double>> nonsym_eigs_dense(const Eigen::MatrixXd& a);

// Largest singular value.
double operator_norm(const Eigen::MatrixXd& a);

struct GapStatistic {
  double gap;  // mu_2 v |mu_n|
  double mu;   // max{|mu_i| : |mu_i| < d}
};

GapStatistic gap_statistic(const AdjacencyMatrix& a, std::size_t d,
                           EigsMode mode = EigsMode::Dense);

// mu <= 2 sqrt(d-1) at tolerance 1e-10; false outright when the second
// eigenvalue reaches d (disconnected graph).
bool is_ramanujan(const AdjacencyMatrix& a, std::size_t d,
                  EigsMode mode = EigsMode::Dense);

struct AlonBoppanaReport {
  bool mu2_above;
  double mu2;
  double serre_fraction;  // fraction of eigenvalues >= 2 sqrt(d-1) - eps
};

bool alon_boppana_check(const AdjacencyMatrix& a, std::size_t d, double eps,
                        AlonBoppanaReport* report = nullptr);

struct SpectralReport {
  std::vector<double> eigenvalues;
  double mu;
  double gap_stat;
  bool ramanujan;
  std::size_t d;
};

SpectralReport spectral_report(const AdjacencyMatrix& a, std::size_t d,
                               EigsMode mode = EigsMode::Dense);

}  // namespace nbspec
