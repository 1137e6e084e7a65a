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
#include <optional>
#include <utility>
#include <vector>

namespace nbspec {

// Dense symmetric matrix of nonnegative integer multiplicities.
// A loop at v contributes 2 to the diagonal entry at v.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t dimension)
      : n_(dimension), entries_(dimension * dimension, 0) {}

  std::size_t dimension() const { return n_; }

  std::int64_t operator()(std::size_t u, std::size_t v) const {
    return entries_[u * n_ + v];
  }
  std::int64_t& operator()(std::size_t u, std::size_t v) {
    return entries_[u * n_ + v];
  }

  std::vector<std::int64_t> row_sums() const;
  bool is_symmetric() const;
  // Sum of all entries; equals the directed edge count of the source graph.
  std::int64_t total() const;

 private:
  std::size_t n_;
  std::vector<std::int64_t> entries_;
};

// Immutable multigraph: abstract vertices, undirected edges, and a vertex map
// onto actual vertices. Edge j yields directed edges 2j (along) and 2j+1
// (against), so inverse(e) == (e ^ 1) holds by construction. Loops are kept
// as two distinct directed edges with equal endpoints.
class BaseMultigraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  static BaseMultigraph from_edge_list(
      std::size_t n_vertices, std::vector<Edge> edges,
      std::optional<std::vector<std::size_t>> vertex_map = std::nullopt);

  std::size_t vertex_count() const { return n_vertices_; }
  std::size_t actual_vertex_count() const { return n_actual_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t directed_edge_count() const { return 2 * edges_.size(); }

  static std::size_t inverse(std::size_t e) { return e ^ 1; }

  std::size_t tail(std::size_t e) const {
    const Edge& ed = edges_[e >> 1];
    return (e & 1) == 0 ? ed.first : ed.second;
  }
  std::size_t head(std::size_t e) const {
    const Edge& ed = edges_[e >> 1];
    return (e & 1) == 0 ? ed.second : ed.first;
  }
  std::size_t actual_tail(std::size_t e) const { return vertex_map_[tail(e)]; }
  std::size_t actual_head(std::size_t e) const { return vertex_map_[head(e)]; }

  std::size_t map_at(std::size_t v) const { return vertex_map_[v]; }
  bool has_custom_map() const { return custom_map_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Directed edges whose actual tail is the given actual vertex.
  const std::vector<std::uint32_t>& out_edges(std::size_t actual_vertex) const {
    return out_edges_[actual_vertex];
  }
  std::size_t degree(std::size_t actual_vertex) const {
    return out_edges_[actual_vertex].size();
  }

 private:
  BaseMultigraph() = default;

  std::size_t n_vertices_ = 0;
  std::size_t n_actual_ = 0;
  bool custom_map_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> vertex_map_;
  std::vector<std::vector<std::uint32_t>> out_edges_;
};

// A_uv counts the directed edges mapped by the vertex map onto (u, v).
AdjacencyMatrix adjacency(const BaseMultigraph& x);

// Largest actual-vertex degree, counting loops twice.
std::size_t max_degree(const BaseMultigraph& x);

// True iff A has zero diagonal, entries in {0, 1} and all row sums equal d.
bool is_simple_regular(const AdjacencyMatrix& a, std::size_t d);

// Canonical small graphs used across tests and experiments.
BaseMultigraph complete_graph(std::size_t n);
BaseMultigraph bouquet_graph(std::size_t n_loops);
BaseMultigraph cycle_graph(std::size_t n);

}  // namespace nbspec
