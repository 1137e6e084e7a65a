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

#include "nbspec/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nbspec/errors.hpp"

namespace nbspec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok:
      return "Ok";
    case ErrorCode::InvalidEdge:
      return "InvalidEdge";
    case ErrorCode::NoMatchingExists:
      return "NoMatchingExists";
    case ErrorCode::RejectionBudgetExhausted:
      return "RejectionBudgetExhausted";
    case ErrorCode::ConvergenceFailure:
      return "ConvergenceFailure";
    case ErrorCode::ReducibleOperator:
      return "ReducibleOperator";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::NotRegular:
      return "NotRegular";
    case ErrorCode::EnumerationBudget:
      return "EnumerationBudget";
    case ErrorCode::PreconditionTangled:
      return "PreconditionTangled";
    case ErrorCode::HypothesisFailed:
      return "HypothesisFailed";
    case ErrorCode::ContainmentViolation:
      return "ContainmentViolation";
    case ErrorCode::EmptySample:
      return "EmptySample";
    case ErrorCode::PreconditionFailed:
      return "PreconditionFailed";
    case ErrorCode::InvalidPath:
      return "InvalidPath";
    case ErrorCode::IoFailure:
      return "IoFailure";
    case ErrorCode::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string format_graph(const BaseMultigraph& x) {
  std::ostringstream out;
  out << x.vertex_count() << ' ' << x.edge_count() << '\n';
  for (const auto& edge : x.edges()) {
    out << edge.first << ' ' << edge.second << '\n';
  }
  if (x.has_custom_map()) {
    out << "map\n";
    for (std::size_t v = 0; v < x.vertex_count(); ++v) {
      out << x.map_at(v) << '\n';
    }
  }
  return out.str();
}

BaseMultigraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  if (!(in >> n_vertices >> n_edges)) {
    throw IoFailureError("graph header must be 'n_vertices n_edges'");
  }
  std::vector<BaseMultigraph::Edge> edges;
  edges.reserve(n_edges);
  for (std::size_t j = 0; j < n_edges; ++j) {
    std::size_t u = 0;
    std::size_t v = 0;
    if (!(in >> u >> v)) throw IoFailureError("graph edge line missing");
    edges.emplace_back(u, v);
  }
  std::string keyword;
  std::optional<std::vector<std::size_t>> map;
  if (in >> keyword) {
    if (keyword != "map") throw IoFailureError("unexpected trailing content");
    std::vector<std::size_t> values(n_vertices);
    for (std::size_t v = 0; v < n_vertices; ++v) {
      if (!(in >> values[v])) throw IoFailureError("map entry missing");
    }
    map = std::move(values);
  }
  return BaseMultigraph::from_edge_list(n_vertices, std::move(edges),
                                        std::move(map));
}

std::string format_matching(const HalfEdgeSpace& space, const Matching& sigma) {
  if (sigma.size() != space.size()) {
    throw DimensionMismatchError("matching size does not match half-edge space");
  }
  std::ostringstream out;
  for (std::size_t e = 0; e < space.size(); ++e) {
    const std::size_t f = sigma.at(e);
    if (f < e) continue;
    out << space.vertex_of(e) << ' ' << e % space.d + 1 << ' '
        << space.vertex_of(f) << ' ' << f % space.d + 1 << '\n';
  }
  return out.str();
}

Matching parse_matching(const HalfEdgeSpace& space, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint32_t> pairing(space.size(), 0);
  std::vector<bool> seen(space.size(), false);
  std::size_t v = 0;
  std::size_t i = 0;
  std::size_t w = 0;
  std::size_t j = 0;
  while (in >> v >> i >> w >> j) {
    if (v >= space.n || w >= space.n || i < 1 || i > space.d || j < 1 ||
        j > space.d) {
      throw IoFailureError("matching line out of range");
    }
    const std::size_t e = space.first_at(v) + (i - 1);
    const std::size_t f = space.first_at(w) + (j - 1);
    if (seen[e] || seen[f]) throw IoFailureError("half-edge repeated");
    seen[e] = true;
    seen[f] = true;
    pairing[e] = static_cast<std::uint32_t>(f);
    pairing[f] = static_cast<std::uint32_t>(e);
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw IoFailureError("matching file does not cover every half-edge");
  }
  return Matching(std::move(pairing));
}

std::string format_sparse(const NBMatrix& b) {
  std::ostringstream out;
  for (std::size_t e = 0; e < b.dimension(); ++e) {
    std::vector<std::uint32_t> cols = b.row(e);
    std::sort(cols.begin(), cols.end());
    for (const std::uint32_t f : cols) {
      out << e << ' ' << f << " 1\n";
    }
  }
  return out.str();
}

std::string format_lift_permutations(const LiftPermutations& sigma) {
  std::ostringstream out;
  for (std::size_t j = 0; j < sigma.undirected_edges(); ++j) {
    out << j << ':';
    for (const std::uint32_t img : sigma.forward(j)) {
      out << ' ' << img + 1;
    }
    out << '\n';
  }
  return out.str();
}

LiftPermutations parse_lift_permutations(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::uint32_t>> perms;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      throw IoFailureError("permutation line missing ':'");
    }
    std::istringstream head(line.substr(0, colon));
    std::size_t index = 0;
    if (!(head >> index) || index != perms.size()) {
      throw IoFailureError("permutation lines must be numbered in order");
    }
    std::istringstream body(line.substr(colon + 1));
    std::vector<std::uint32_t> perm;
    std::size_t img = 0;
    while (body >> img) {
      if (img < 1) throw IoFailureError("permutation images are 1-based");
      perm.push_back(static_cast<std::uint32_t>(img - 1));
    }
    if (perm.empty()) throw IoFailureError("empty permutation line");
    perms.push_back(std::move(perm));
  }
  if (perms.empty()) throw IoFailureError("no permutations in file");
  const std::size_t degree = perms.front().size();
  LiftPermutations sigma(perms.size(), degree);
  for (std::size_t j = 0; j < perms.size(); ++j) {
    if (perms[j].size() != degree) {
      throw IoFailureError("permutations disagree on the lift degree");
    }
    sigma.set_forward(j, perms[j]);
  }
  return sigma;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailureError("cannot open file for reading: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailureError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw IoFailureError("write failed: " + path);
}

}  // namespace nbspec
