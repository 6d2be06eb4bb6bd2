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

#include "improvelearn/graph_model.hpp"

#include <algorithm>
#include <cmath>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/parallel.hpp"

namespace improvelearn {

GraphInstance::GraphInstance(Graph graph, std::vector<Label> f_star)
    : graph_(std::move(graph)), f_star_(std::move(f_star)) {
  if (f_star_.size() != graph_.n()) {
    throw ArgumentError("labeling has " + std::to_string(f_star_.size()) +
                        " entries for a graph with " + std::to_string(graph_.n()) + " nodes");
  }
  for (Label y : f_star_) {
    if (y != 0 && y != 1) throw ArgumentError("node labels must be 0 or 1");
  }
}

std::vector<NodeId> GraphInstance::positives() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < n(); ++u) {
    if (f_star_[u]) out.push_back(u);
  }
  return out;
}

std::vector<NodeId> GraphInstance::improvable_negatives() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < n(); ++u) {
    if (f_star_[u]) continue;
    const auto& nb = graph_.neighbors(u);
    if (std::any_of(nb.begin(), nb.end(), [&](NodeId v) { return f_star_[v] == 1; })) {
      out.push_back(u);
    }
  }
  return out;
}

CoverageStats coverage_stats(const GraphInstance& inst) {
  CoverageStats st;
  bool first = true;
  for (NodeId u : inst.positives()) {
    std::size_t deg = 0;
    for (NodeId v : inst.graph().neighbors(u)) deg += inst.label(v);
    st.d_min_plus = first ? deg : std::min(st.d_min_plus, deg);
    first = false;
    ++st.n_plus;
  }
  for (NodeId u : inst.improvable_negatives()) {
    std::size_t pos = 0;
    for (NodeId v : inst.graph().neighbors(u)) pos += inst.label(v);
    st.d_min_N = std::min(st.d_min_N, pos);
  }
  return st;
}

Hypothesis learn_graph_conservative(const GraphInstance& inst, const std::vector<NodeId>& sample) {
  std::vector<Label> h(inst.n(), 0);
  for (NodeId u : sample) {
    if (u >= inst.n()) throw ArgumentError("sampled node " + std::to_string(u) + " out of range");
    if (inst.label(u)) h[u] = 1;
  }
  return Hypothesis::finite_labeling(std::move(h));
}

bool is_covered(const GraphInstance& inst, NodeId x, const std::vector<NodeId>& sample) {
  if (x >= inst.n()) throw ArgumentError("node " + std::to_string(x) + " out of range");
  if (!inst.label(x)) {
    throw PreconditionError("coverage is only defined for positive nodes; node " +
                            std::to_string(x) + " is negative");
  }
  for (NodeId s : sample) {
    if (s == x) return true;
    if (inst.label(s) && inst.graph().has_edge(x, s)) return true;
  }
  return false;
}

namespace {

std::vector<bool> sampled_positive_mask(const GraphInstance& inst,
                                        const std::vector<NodeId>& sample) {
  std::vector<bool> mask(inst.n(), false);
  for (NodeId s : sample) {
    if (s >= inst.n()) throw ArgumentError("sampled node " + std::to_string(s) + " out of range");
    if (inst.label(s)) mask[s] = true;
  }
  return mask;
}

bool has_marked_neighbor(const Graph& g, NodeId u, const std::vector<bool>& mask) {
  const auto& nb = g.neighbors(u);
  return std::any_of(nb.begin(), nb.end(), [&](NodeId v) { return mask[v]; });
}

}  // namespace

bool all_positives_covered(const GraphInstance& inst, const std::vector<NodeId>& sample) {
  auto mask = sampled_positive_mask(inst, sample);
  for (NodeId u : inst.positives()) {
    if (!mask[u] && !has_marked_neighbor(inst.graph(), u, mask)) return false;
  }
  return true;
}

bool all_improvable_enabled(const GraphInstance& inst, const std::vector<NodeId>& sample) {
  auto mask = sampled_positive_mask(inst, sample);
  for (NodeId u : inst.improvable_negatives()) {
    if (!has_marked_neighbor(inst.graph(), u, mask)) return false;
  }
  return true;
}

namespace {

std::size_t bound(std::size_t n, double denom, double delta, double c) {
  if (n == 0) throw ArgumentError("sample-size bound needs n >= 1");
  if (!(delta > 0 && delta < 1)) throw ArgumentError("delta must lie in (0, 1)");
  if (!(c > 0)) throw ArgumentError("constant c must be positive");
  double n_d = static_cast<double>(n);
  return static_cast<std::size_t>(
      std::ceil(c * n_d * (std::log(n_d) + std::log(1.0 / delta)) / denom));
}

}  // namespace

std::size_t zero_error_sample_size(std::size_t n, std::size_t d_min_plus, double delta, double c) {
  return bound(n, static_cast<double>(d_min_plus) + 1.0, delta, c);
}

std::size_t enabling_sample_size(std::size_t n, std::size_t d_min_N, double delta, double c) {
  if (d_min_N == CoverageStats::kInfinite) return 0;
  if (d_min_N == 0) throw ArgumentError("d_min_N must be positive");
  return bound(n, static_cast<double>(d_min_N), delta, c);
}

bool is_dominating_set(const Graph& g, const std::vector<NodeId>& set) {
  std::vector<bool> dom(g.n(), false);
  for (NodeId u : set) {
    if (u >= g.n()) return false;
    dom[u] = true;
    for (NodeId v : g.neighbors(u)) dom[v] = true;
  }
  return std::all_of(dom.begin(), dom.end(), [](bool b) { return b; });
}

std::vector<NodeId> greedy_dominating_set(const Graph& g) {
  std::vector<bool> dominated(g.n(), false);
  std::size_t remaining = g.n();
  std::vector<NodeId> chosen;
  while (remaining > 0) {
    NodeId best = 0;
    std::size_t best_gain = 0;
    for (NodeId u = 0; u < g.n(); ++u) {
      std::size_t gain = !dominated[u];
      for (NodeId v : g.neighbors(u)) gain += !dominated[v];
      if (gain > best_gain) {
        best_gain = gain;
        best = u;
      }
    }
    chosen.push_back(best);
    if (!dominated[best]) {
      dominated[best] = true;
      --remaining;
    }
    for (NodeId v : g.neighbors(best)) {
      if (!dominated[v]) {
        dominated[v] = true;
        --remaining;
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  if (!is_dominating_set(g, chosen)) throw InvariantViolation("greedy set does not dominate");
  return chosen;
}

TeachingResult teach_risk_averse_student(const GraphInstance& inst) {
  std::vector<NodeId> pos = inst.positives();
  Graph g_plus = inst.graph().induced(pos);
  std::vector<NodeId> teaching;
  for (NodeId local : greedy_dominating_set(g_plus)) teaching.push_back(pos[local]);
  std::vector<Label> h_labels(inst.n(), 0);
  for (NodeId u : teaching) h_labels[u] = 1;
  Hypothesis h = Hypothesis::finite_labeling(std::move(h_labels));

  Hypothesis f = inst.target();
  ImprovementMap delta = inst.delta();
  InstanceSpace space = InstanceSpace::nodes(inst.n());
  if (inst.n() > 0) {
    LossSetting s{h, f, delta, space};
    double loss = population_loss_exact(s, DistributionSpec::uniform_nodes(inst.n()),
                                        LossKind::kImprovement);
    if (loss != 0.0) {
      throw InvariantViolation("taught student has nonzero loss " + std::to_string(loss));
    }
  }
  return {std::move(teaching), std::move(h)};
}

Graph make_clique_lower_bound(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) {
    throw ArgumentError("clique construction needs k | n (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
  }
  std::size_t size = n / k;
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = i + 1; j < size; ++j) edges.emplace_back(c * size + i, c * size + j);
    }
  }
  return Graph(n, std::move(edges));
}

GraphInstance make_star_partition_lower_bound(std::size_t n, std::size_t k, bool clique_groups) {
  if (k == 0 || k >= n || (n - k) % k != 0) {
    throw ArgumentError("star partition needs 0 < k < n and k | (n - k) (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
  }
  std::size_t g = (n - k) / k;
  std::vector<Edge> edges;
  std::vector<Label> labels(n, 1);
  for (std::size_t hub = 0; hub < k; ++hub) {
    labels[hub] = 0;
    std::size_t base = k + hub * g;
    for (std::size_t i = 0; i < g; ++i) edges.emplace_back(hub, base + i);
    if (clique_groups) {
      for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i + 1; j < g; ++j) edges.emplace_back(base + i, base + j);
      }
    }
  }
  return GraphInstance(Graph(n, std::move(edges)), std::move(labels));
}

std::vector<NodeId> sample_nodes(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<NodeId> out(m);
  for (auto& u : out) u = uniform_index(rng, n);
  return out;
}

double coverage_failure_probability(const GraphInstance& inst, std::size_t m,
                                    std::size_t n_trials, std::uint64_t seed, unsigned jobs) {
  if (n_trials == 0) throw ArgumentError("coverage_failure_probability needs n_trials >= 1");
  std::vector<char> failed(n_trials, 0);
  parallel_for(n_trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    failed[t] = !all_positives_covered(inst, sample_nodes(rng, inst.n(), m));
  });
  double count = 0;
  for (char f : failed) count += f;
  return count / static_cast<double>(n_trials);
}

}  // namespace improvelearn
