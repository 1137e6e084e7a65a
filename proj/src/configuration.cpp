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

#include "nbspec/configuration.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nbspec/errors.hpp"

namespace nbspec {

Matching::Matching(std::vector<std::uint32_t> pairing)
    : pairing_(std::move(pairing)) {
  const std::size_t m = pairing_.size();
  if (m % 2 != 0) {
    throw NoMatchingExistsError("matching needs an even number of half-edges, got " +
                                std::to_string(m));
  }
  for (std::size_t x = 0; x < m; ++x) {
    const std::uint32_t y = pairing_[x];
    if (y >= m) {
      throw PreconditionFailedError("matching image out of range at " +
                                    std::to_string(x));
    }
    if (y == x) {
      throw PreconditionFailedError("matching has fixed point at " +
                                    std::to_string(x));
    }
    if (pairing_[y] != x) {
      throw PreconditionFailedError("matching not involutive at " +
                                    std::to_string(x));
    }
  }
}

Matching sample_uniform_matching(const HalfEdgeSpace& space, Rng& rng) {
  const std::size_t m = space.size();
  if (m % 2 != 0 || m == 0) {
    throw NoMatchingExistsError("no perfect matching on " + std::to_string(m) +
                                " half-edges");
  }
  std::vector<std::uint32_t> pool(m);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> pairing(m);
  std::size_t remaining = m;
  while (remaining > 0) {
    const std::uint32_t x = pool[0];
    const std::size_t j = 1 + static_cast<std::size_t>(
                                  rng.uniform_below(static_cast<std::uint64_t>(remaining - 1)));
    const std::uint32_t y = pool[j];
    pairing[x] = y;
    pairing[y] = x;
    pool[j] = pool[remaining - 1];
    pool[0] = pool[remaining - 2];
    remaining -= 2;
  }
  return Matching(std::move(pairing));
}

AdjacencyMatrix graph_of_matching(const HalfEdgeSpace& space,
                                  const Matching& sigma) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  AdjacencyMatrix a(space.n);
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::size_t u = space.vertex_of(x);
    const std::size_t v = space.vertex_of(sigma.at(x));
    a(u, v) += 1;
  }
  return a;
}

BaseMultigraph multigraph_of_matching(const HalfEdgeSpace& space,
                                      const Matching& sigma) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  std::vector<BaseMultigraph::Edge> edges;
  edges.reserve(space.size() / 2);
  for (std::size_t x = 0; x < space.size(); ++x) {
    const std::size_t y = sigma.at(x);
    if (x < y) {
      edges.emplace_back(space.vertex_of(x), space.vertex_of(y));
    }
  }
  return BaseMultigraph::from_edge_list(space.n, edges);
}

bool matching_is_simple(const HalfEdgeSpace& space, const Matching& sigma) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  // Seen-marks per (u, v) pair, reset lazily; loops rejected outright.
  std::vector<std::size_t> seen(space.n, static_cast<std::size_t>(-1));
  for (std::size_t u = 0; u < space.n; ++u) {
    for (std::size_t i = 0; i < space.d; ++i) {
      const std::size_t x = u * space.d + i;
      const std::size_t v = space.vertex_of(sigma.at(x));
      if (v == u) return false;
      if (seen[v] == u) return false;
      seen[v] = u;
    }
  }
  return true;
}

RegularSample sample_uniform_regular(std::size_t n, std::size_t d, Rng& rng,
                                     std::size_t max_attempts) {
  const HalfEdgeSpace space{n, d};
  if (space.size() % 2 != 0 || space.size() == 0) {
    throw NoMatchingExistsError("n*d must be positive and even, got n=" +
                                std::to_string(n) + " d=" + std::to_string(d));
  }
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Matching sigma = sample_uniform_matching(space, rng);
    if (matching_is_simple(space, sigma)) {
      return RegularSample{graph_of_matching(space, sigma), std::move(sigma),
                           attempt};
    }
  }
  throw RejectionBudgetExhaustedError(
      "no simple graph after " + std::to_string(max_attempts) + " attempts");
}

namespace {

void matchings_rec(std::vector<std::uint32_t>& pairing,
                   std::vector<bool>& used, std::size_t m,
                   const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  std::size_t x = 0;
  while (x < m && used[x]) ++x;
  if (x == m) {
    visit(pairing);
    return;
  }
  used[x] = true;
  for (std::size_t y = x + 1; y < m; ++y) {
    if (used[y]) continue;
    used[y] = true;
    pairing[x] = static_cast<std::uint32_t>(y);
    pairing[y] = static_cast<std::uint32_t>(x);
    matchings_rec(pairing, used, m, visit);
    used[y] = false;
  }
  used[x] = false;
}

}  // namespace

void for_each_matching(std::size_t m,
                       const std::function<void(const std::vector<std::uint32_t>&)>& visit) {
  if (m % 2 != 0) {
    throw NoMatchingExistsError("odd half-edge count " + std::to_string(m));
  }
  if (m > 16) {
    throw EnumerationBudgetError("matching enumeration limited to m <= 16, got " +
                                 std::to_string(m));
  }
  if (m == 0) return;
  std::vector<std::uint32_t> pairing(m, 0);
  std::vector<bool> used(m, false);
  matchings_rec(pairing, used, m, visit);
}

}  // namespace nbspec
