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

#include "nbspec/multigraph.hpp"

#include <algorithm>
#include <string>

#include "nbspec/errors.hpp"

namespace nbspec {

std::vector<std::int64_t> AdjacencyMatrix::row_sums() const {
  std::vector<std::int64_t> sums(n_, 0);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) sums[u] += (*this)(u, v);
  }
  return sums;
}

bool AdjacencyMatrix::is_symmetric() const {
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if ((*this)(u, v) != (*this)(v, u)) return false;
    }
  }
  return true;
}

std::int64_t AdjacencyMatrix::total() const {
  std::int64_t t = 0;
  for (std::int64_t value : entries_) t += value;
  return t;
}

BaseMultigraph BaseMultigraph::from_edge_list(
    std::size_t n_vertices, std::vector<Edge> edges,
    std::optional<std::vector<std::size_t>> vertex_map) {
  for (const Edge& e : edges) {
    if (e.first >= n_vertices || e.second >= n_vertices) {
      throw InvalidEdgeError("edge endpoint " +
                        std::to_string(std::max(e.first, e.second)) +
                        " out of range for " + std::to_string(n_vertices) +
                        " vertices");
    }
  }

  BaseMultigraph x;
  x.n_vertices_ = n_vertices;
  x.edges_ = std::move(edges);
  if (vertex_map.has_value()) {
    if (vertex_map->size() != n_vertices) {
      throw PreconditionFailedError("vertex map must cover every vertex");
    }
    x.vertex_map_ = std::move(*vertex_map);
    x.custom_map_ = true;
    std::size_t max_actual = 0;
    for (std::size_t v : x.vertex_map_) max_actual = std::max(max_actual, v);
    x.n_actual_ = x.vertex_map_.empty() ? 0 : max_actual + 1;
  } else {
    x.vertex_map_.resize(n_vertices);
    for (std::size_t v = 0; v < n_vertices; ++v) x.vertex_map_[v] = v;
    x.custom_map_ = false;
    x.n_actual_ = n_vertices;
  }

  x.out_edges_.resize(x.n_actual_);
  for (std::size_t e = 0; e < x.directed_edge_count(); ++e) {
    x.out_edges_[x.actual_tail(e)].push_back(static_cast<std::uint32_t>(e));
  }
  return x;
}

AdjacencyMatrix adjacency(const BaseMultigraph& x) {
  AdjacencyMatrix a(x.actual_vertex_count());
  for (std::size_t e = 0; e < x.directed_edge_count(); ++e) {
    a(x.actual_tail(e), x.actual_head(e)) += 1;
  }
  return a;
}

std::size_t max_degree(const BaseMultigraph& x) {
  std::size_t d = 0;
  for (std::size_t v = 0; v < x.actual_vertex_count(); ++v) {
    d = std::max(d, x.degree(v));
  }
  return d;
}

bool is_simple_regular(const AdjacencyMatrix& a, std::size_t d) {
  const std::size_t n = a.dimension();
  for (std::size_t u = 0; u < n; ++u) {
    std::int64_t row = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::int64_t value = a(u, v);
      if (u == v && value != 0) return false;
      if (value < 0 || value > 1) return false;
      row += value;
    }
    if (row != static_cast<std::int64_t>(d)) return false;
  }
  return true;
}

BaseMultigraph complete_graph(std::size_t n) {
  std::vector<BaseMultigraph::Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return BaseMultigraph::from_edge_list(n, std::move(edges));
}

BaseMultigraph bouquet_graph(std::size_t n_loops) {
  std::vector<BaseMultigraph::Edge> edges(n_loops, {0, 0});
  return BaseMultigraph::from_edge_list(1, std::move(edges));
}

BaseMultigraph cycle_graph(std::size_t n) {
  std::vector<BaseMultigraph::Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return BaseMultigraph::from_edge_list(n, std::move(edges));
}

}  // namespace nbspec
