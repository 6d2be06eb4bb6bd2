/* Copyright 2026 The improvelearn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "improvelearn/point.hpp"

namespace improvelearn {

using NodeId = std::size_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph on nodes 0..n-1. Edges keep their
/// insertion order so that the edge-list format round-trips bit-exactly.
class Graph {
 public:
  Graph() = default;
  /// Rejects self-loops, duplicate edges (in either orientation) and ids >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const { return adj_.size(); }
  std::size_t m() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted neighbor list.
  const std::vector<NodeId>& neighbors(NodeId u) const;
  std::size_t degree(NodeId u) const { return neighbors(u).size(); }
  bool has_edge(NodeId u, NodeId v) const;

  /// Shortest-path distances from src; unreachable nodes get n + 1.
  std::vector<std::size_t> bfs_distances(NodeId src) const;

  /// Subgraph induced by `nodes` (relabelled 0..k-1 in the given order).
  Graph induced(const std::vector<NodeId>& nodes) const;

  /// "n m" header followed by one "u v" line per edge.
  std::string to_edge_list() const;
  static Graph parse_edge_list(const std::string& text);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adj_;
};

/// Edge (u, v) iff 1 <= d_G(u, v) <= rho.
Graph graph_power(const Graph& g, int rho);

std::vector<Label> parse_labeling(const std::string& text, std::size_t n);
std::string format_labeling(const std::vector<Label>& labels);

std::string read_file(const std::string& path);

}  // namespace improvelearn
