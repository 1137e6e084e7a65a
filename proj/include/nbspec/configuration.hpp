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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "nbspec/multigraph.hpp"
#include "nbspec/rng.hpp"

namespace nbspec {

// Half-edge set {(v, i) : v < n, 1 <= i <= d} flattened to ids v * d + (i-1).
struct HalfEdgeSpace {
  std::size_t n = 0;
  std::size_t d = 0;

  std::size_t size() const { return n * d; }
  std::size_t vertex_of(std::size_t half_edge) const { return half_edge / d; }
  std::size_t first_at(std::size_t v) const { return v * d; }
};

// Involutive fixed-point-free pairing of the half-edge set.
class Matching {
 public:
  explicit Matching(std::vector<std::uint32_t> pairing);

  std::size_t size() const { return pairing_.size(); }
  std::size_t at(std::size_t half_edge) const { return pairing_[half_edge]; }
  const std::vector<std::uint32_t>& pairing() const { return pairing_; }

 private:
  std::vector<std::uint32_t> pairing_;
};

// Exactly uniform over the (m-1)!! matchings: the first unmatched half-edge
// is paired with a uniformly random remaining one, repeatedly.
Matching sample_uniform_matching(const HalfEdgeSpace& space, Rng& rng);

// A_uv counts the half-edges of u matched into E(v); loops add 2 per pair.
AdjacencyMatrix graph_of_matching(const HalfEdgeSpace& space,
                                  const Matching& sigma);

// Glued multigraph itself, one undirected edge per matched pair, ordered by
// the smaller half-edge id.
BaseMultigraph multigraph_of_matching(const HalfEdgeSpace& space,
                                      const Matching& sigma);

// Simplicity test equivalent to is_simple_regular(graph_of_matching(...), d)
// without materializing the adjacency matrix.
bool matching_is_simple(const HalfEdgeSpace& space, const Matching& sigma);

struct RegularSample {
  AdjacencyMatrix adjacency;
  Matching matching;
  std::size_t attempts;
};

// Rejection sampler: uniform matchings conditioned on simplicity, hence
// uniform over simple d-regular graphs on n vertices.
RegularSample sample_uniform_regular(std::size_t n, std::size_t d, Rng& rng,
                                     std::size_t max_attempts);

// Visits all (m-1)!! matchings of {0, ..., m-1}; m <= 16 guarded.
void for_each_matching(std::size_t m,
                       const std::function<void(const std::vector<std::uint32_t>&)>& visit);

}  // namespace nbspec
