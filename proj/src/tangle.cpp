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

#include "nbspec/tangle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "nbspec/configuration.hpp"
#include "nbspec/errors.hpp"

namespace nbspec {

NeighborhoodReport ball_report(const BaseMultigraph& x, std::uint32_t v,
                               std::size_t ell) {
  const std::size_t n = x.actual_vertex_count();
  if (v >= n) {
    throw InvalidEdgeError("vertex " + std::to_string(v) + " out of range");
  }
  constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kUnreached);
  std::deque<std::uint32_t> queue{v};
  dist[v] = 0;
  std::size_t vertices = 1;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    if (dist[u] == ell) continue;
    for (std::uint32_t e : x.out_edges(u)) {
      const auto w = static_cast<std::uint32_t>(x.actual_head(e));
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        ++vertices;
        queue.push_back(w);
      }
    }
  }
  std::size_t edges = 0;
  for (std::size_t j = 0; j < x.edge_count(); ++j) {
    const std::size_t a = x.actual_tail(static_cast<std::uint32_t>(2 * j));
    const std::size_t b = x.actual_head(static_cast<std::uint32_t>(2 * j));
    if (dist[a] <= ell && dist[b] <= ell) ++edges;
  }
  NeighborhoodReport rep;
  rep.center = v;
  rep.radius = ell;
  rep.ball_vertices = vertices;
  rep.ball_edges = edges;
  rep.cycle_count = edges + 1 > vertices ? edges + 1 - vertices : 0;
  return rep;
}

bool is_ell_tangle_free(const BaseMultigraph& x, std::size_t ell,
                        std::uint32_t* offending) {
  const std::size_t n = x.actual_vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    const NeighborhoodReport rep =
        ball_report(x, static_cast<std::uint32_t>(v), ell);
    if (rep.cycle_count > 1) {
      if (offending != nullptr) *offending = static_cast<std::uint32_t>(v);
      return false;
    }
  }
  return true;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), components_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[a] = b;
      --components_;
    }
  }

  std::size_t components() const { return components_; }

 private:
  std::vector<std::size_t> parent_;
  std::size_t components_;
};

}  // namespace

bool is_tangle_free_graph(const BaseMultigraph& x) {
  const std::size_t n = x.actual_vertex_count();
  UnionFind uf(n);
  for (std::size_t j = 0; j < x.edge_count(); ++j) {
    uf.unite(x.actual_tail(static_cast<std::uint32_t>(2 * j)),
             x.actual_head(static_cast<std::uint32_t>(2 * j)));
  }
  // Independent cycles across the whole graph: E - V + C.
  const std::size_t e = x.edge_count();
  const std::size_t c = uf.components();
  return e + c <= n + 1;
}

TangledFractionResult tangled_fraction(std::size_t n, std::size_t d,
                                       std::size_t ell, std::size_t trials,
                                       Rng& rng) {
  if (trials == 0) {
    throw EmptySampleError("tangled fraction needs at least one trial");
  }
  const HalfEdgeSpace space{n, d};
  std::size_t tangled = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Matching sigma = sample_uniform_matching(space, rng);
    const BaseMultigraph g = multigraph_of_matching(space, sigma);
    if (!is_ell_tangle_free(g, ell)) ++tangled;
  }
  TangledFractionResult res;
  res.trials = trials;
  res.fraction = static_cast<double>(tangled) / static_cast<double>(trials);
  res.standard_error = std::sqrt(
      std::max(0.0, res.fraction * (1.0 - res.fraction)) /
      static_cast<double>(trials));
  res.regime_ok =
      d >= 3 && n >= 2 &&
      static_cast<double>(ell) <=
          0.24 * std::log(static_cast<double>(n)) /
              std::log(static_cast<double>(d) - 1.0);
  return res;
}

}  // namespace nbspec
