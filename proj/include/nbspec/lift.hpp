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

#ifndef NBSPEC_LIFT_HPP_
#define NBSPEC_LIFT_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "nbspec/multigraph.hpp"
#include "nbspec/nonbacktracking.hpp"
#include "nbspec/rng.hpp"

namespace nbspec {

// One permutation of {0..n-1} per undirected base edge; the reverse
// orientation implicitly uses the inverse permutation.
class LiftPermutations {
 public:
  LiftPermutations(std::size_t n_undirected_edges, std::size_t degree);

  static LiftPermutations identity(std::size_t n_undirected_edges,
                                   std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t undirected_edges() const { return forward_.size(); }

  const std::vector<std::uint32_t>& forward(std::size_t edge) const {
    return forward_[edge];
  }
  const std::vector<std::uint32_t>& backward(std::size_t edge) const {
    return backward_[edge];
  }

  // Overwrites the permutation of one undirected edge and stores its inverse
  // for the reverse orientation.
  void set_forward(std::size_t edge, const std::vector<std::uint32_t>& perm);

  // sigma_e(i) for a directed base edge e.
  std::uint32_t sigma(std::uint32_t directed_edge, std::uint32_t i) const;

  // Checks sigma_{e^-1} = sigma_e^{-1} for every directed edge.
  bool is_involutive_consistent() const;

 private:
  std::size_t degree_;
  std::vector<std::vector<std::uint32_t>> forward_;
  std::vector<std::vector<std::uint32_t>> backward_;
};

// Fiber-constant subspace H of the lift: vectors indexed by (e, i) with
// e < r and i < n that do not depend on i.
struct FiberSubspace {
  std::size_t r = 0;
  std::size_t n = 0;

  std::size_t dimension() const { return r * n; }
  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  Eigen::VectorXd project_out(const Eigen::VectorXd& x) const;
  Eigen::VectorXd embed(const Eigen::VectorXd& base) const;
  Eigen::VectorXd restrict_to_base(const Eigen::VectorXd& x) const;
};

struct Lift {
  BaseMultigraph graph;  // the lifted multigraph on |V| * n vertices
  NBMatrix b_n;          // indexed by (base directed edge, fiber index)
  std::size_t base_r = 0;
  std::size_t degree = 0;
};

// One uniform permutation per undirected edge, independent across edges.
LiftPermutations sample_random_lift(const BaseMultigraph& x, std::size_t n,
                                    Rng& rng);

Lift build_lift(const BaseMultigraph& x, const LiftPermutations& sigma);

// Restriction of b_n to the fiber-constant subspace, expressed in the base
// directed-edge basis. Equals the base non-backtracking matrix for a valid
// lift.
Eigen::MatrixXd fiber_restriction(const NBMatrix& b_n, std::size_t r,
                                  std::size_t n);

struct SplitSpectrum {
  std::vector<std::complex<double>> old_eigs;
  std::vector<std::complex<double>> new_eigs;
};

// Removes one nearest match per base eigenvalue (within tol * (1 + |mu|));
// the remainder, sorted by modulus descending, is the new-eigenvalue
// multiset. Throws ContainmentViolation when a base eigenvalue has no match.
SplitSpectrum split_spectrum(const std::vector<std::complex<double>>& lift_eigs,
                             const std::vector<std::complex<double>>& base_eigs,
                             double tol);

enum class NewEigMethod { Dense, ProjectedPower };

// Modulus of the leading new eigenvalue of the lift. The dense method uses a
// full eigensolve of both operators plus split_spectrum; the projected-power
// method returns a windowed growth estimate on the complement of the
// fiber-constant subspace, robust to complex leading pairs and accurate to
// about one percent.
double new_lead_modulus(const BaseMultigraph& x, const LiftPermutations& sigma,
                        NewEigMethod method);

}  // namespace nbspec

#endif  // NBSPEC_LIFT_HPP_
