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

#include "improvelearn/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

#include "improvelearn/errors.hpp"

namespace improvelearn {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), adj_(n) {
  for (const auto& [u, v] : edges_) {
    if (u >= n || v >= n) {
      throw ArgumentError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                          ") references a node outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) throw ArgumentError("self-loop at node " + std::to_string(u));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (NodeId u = 0; u < n; ++u) {
    auto& a = adj_[u];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
      throw ArgumentError("duplicate edge at node " + std::to_string(u));
    }
  }
}

const std::vector<NodeId>& Graph::neighbors(NodeId u) const {
  if (u >= n()) throw ArgumentError("node " + std::to_string(u) + " out of range");
  return adj_[u];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto& a = neighbors(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::size_t> Graph::bfs_distances(NodeId src) const {
  const std::size_t unreachable = n() + 1;
  std::vector<std::size_t> dist(n(), unreachable);
  if (src >= n()) throw ArgumentError("node " + std::to_string(src) + " out of range");
  std::deque<NodeId> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj_[u]) {
      if (dist[v] == unreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

Graph Graph::induced(const std::vector<NodeId>& nodes) const {
  std::vector<std::size_t> index(n(), n());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= n()) throw ArgumentError("induced subgraph node out of range");
    if (index[nodes[i]] != n()) throw ArgumentError("induced subgraph node repeated");
    index[nodes[i]] = i;
  }
  std::vector<Edge> sub;
  for (const auto& [u, v] : edges_) {
    if (index[u] != n() && index[v] != n()) sub.emplace_back(index[u], index[v]);
  }
  return Graph(nodes.size(), std::move(sub));
}

std::string Graph::to_edge_list() const {
  std::string out = std::to_string(n()) + " " + std::to_string(m()) + "\n";
  for (const auto& [u, v] : edges_) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

namespace {

std::size_t read_count(std::istringstream& in, const char* what) {
  long long v;
  if (!(in >> v)) throw ParseError(std::string("expected ") + what);
  if (v < 0) throw ParseError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

}  // namespace

Graph Graph::parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = read_count(in, "node count");
  std::size_t m = read_count(in, "edge count");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t u = read_count(in, "edge endpoint");
    std::size_t v = read_count(in, "edge endpoint");
    edges.emplace_back(u, v);
  }
  std::string rest;
  if (in >> rest) throw ParseError("trailing content after " + std::to_string(m) + " edges");
  try {
    return Graph(n, std::move(edges));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
}

Graph graph_power(const Graph& g, int rho) {
  if (rho < 1) throw ArgumentError("graph power radius must be >= 1");
  if (rho == 1) return g;
  std::vector<Edge> edges;
  for (NodeId u = 0; u < g.n(); ++u) {
    auto dist = g.bfs_distances(u);
    for (NodeId v = u + 1; v < g.n(); ++v) {
      if (dist[v] >= 1 && dist[v] <= static_cast<std::size_t>(rho)) edges.emplace_back(u, v);
    }
  }
  return Graph(g.n(), std::move(edges));
}

std::vector<Label> parse_labeling(const std::string& text, std::size_t n) {
  std::istringstream in(text);
  std::vector<Label> labels;
  std::string tok;
  while (in >> tok) {
    if (tok != "0" && tok != "1") throw ParseError("label '" + tok + "' is not 0 or 1");
    labels.push_back(tok == "1");
  }
  if (labels.size() != n) {
    throw ParseError("labeling has " + std::to_string(labels.size()) + " entries, graph has " +
                     std::to_string(n) + " nodes");
  }
  return labels;
}

std::string format_labeling(const std::vector<Label>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ' ';
    out += static_cast<char>('0' + labels[i]);
  }
  return out + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace improvelearn
