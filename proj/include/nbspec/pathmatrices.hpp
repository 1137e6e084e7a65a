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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "nbspec/configuration.hpp"

namespace nbspec {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RatMatrix =
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// A path is a sequence of half-edges (positions 1..k of the definition map
// to indices 0..k-1). Odd/even positions alternate matching steps (pairs
// (gamma_{2t-1}, gamma_{2t})) and within-vertex steps.
using Path = std::vector<std::uint32_t>;

enum class PathKind { Admissible, NonBacktracking, TangleFree };

inline constexpr std::size_t kDefaultEnumerationBudget = 10'000'000;

// All paths of the requested class and length, optionally with fixed
// endpoints. Budget counts visited partial paths.
std::vector<Path> enumerate_paths(const HalfEdgeSpace& space, PathKind kind,
                                  std::size_t length,
                                  std::optional<std::uint32_t> e,
                                  std::optional<std::uint32_t> f,
                                  std::size_t budget = kDefaultEnumerationBudget);

// Tangle-free path matrix: entry (e,f) counts sigma-consistent tangle-free
// non-backtracking paths of length 2k+1 from e to f.
IntMatrix build_B_tf(const HalfEdgeSpace& space, const Matching& sigma,
                     std::size_t k,
                     std::size_t budget = kDefaultEnumerationBudget);

// Centered variant: matching steps range over all admissible pairs with
// exact weights M_{gh} - 1/(dn); denominators divide (dn)^k.
RatMatrix build_underline_B_tf(const HalfEdgeSpace& space,
                               const Matching& sigma, std::size_t k,
                               std::size_t budget = kDefaultEnumerationBudget);

// Remainder matrix: paths of length 2l+1 whose prefix of length 2k-1 and
// suffix of length 2(l-k)+1 are tangle-free while the whole path is tangled.
// The freed middle step carries no weight; prefix steps carry centered
// weights, suffix steps are sigma-forced.
RatMatrix build_R(const HalfEdgeSpace& space, const Matching& sigma,
                  std::size_t ell, std::size_t k,
                  std::size_t budget = kDefaultEnumerationBudget);

// B^{(k)} == B^k entrywise (true on l-tangle-free graphs for k <= l).
bool verify_power_identity(const HalfEdgeSpace& space, const Matching& sigma,
                           std::size_t k,
                           std::size_t budget = kDefaultEnumerationBudget);

// Checks both displayed forms of the telescoping decomposition
//   B^(l) = uB^(l) + (1/dn) sum_k uB^(k-1) K B^(l-k) - (1/dn) sum_k R^(l)_k
// exactly in rational arithmetic; worst_abs (optional) receives the largest
// entry mismatch as a double.
bool verify_decomposition(const HalfEdgeSpace& space, const Matching& sigma,
                          std::size_t ell,
                          std::size_t budget = kDefaultEnumerationBudget,
                          double* worst_abs = nullptr);

struct NormBoundReport {
  bool skipped = false;      // disconnected operator, bound not applicable
  std::string reason;
  double lhs = 0.0;          // |lambda_2| of B
  double rhs = 0.0;          // the norm-sum bound, l-th root applied
  bool holds = false;
};

// Second-eigenvalue bound on l-tangle-free instances:
//   |lambda_2| <= (|uB^(l)| + (1/dn) sum_{k<l} |uB^(k)| (d-1)^{l-k}
//                  + (1/dn) sum_{k=1..l} |R^(l)_k|)^{1/l}.
NormBoundReport verify_norm_bound_lemma(
    const HalfEdgeSpace& space, const Matching& sigma, std::size_t ell,
    std::size_t budget = kDefaultEnumerationBudget);

// Courant-Fisher style bound: if im(S) and im(S*) lie in ker(R), every
// eigenvalue of S+R outside sigma(S) has modulus at most
// max_{x in ker S} |(S+R)x| / |x|. Returns the checked inequality;
// bound_out (optional) receives the kernel bound.
bool lemma_hr_check(const Eigen::MatrixXd& s, const Eigen::MatrixXd& r,
                    double* bound_out = nullptr);

}  // namespace nbspec
