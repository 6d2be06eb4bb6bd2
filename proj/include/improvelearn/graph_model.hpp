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

#include <cstdint>
#include <limits>
#include <vector>

#include "improvelearn/graph.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/improvement_map.hpp"
#include "improvelearn/rng.hpp"

namespace improvelearn {

/// A graph together with its ground-truth node labeling.
class GraphInstance {
 public:
  GraphInstance(Graph graph, std::vector<Label> f_star);

  const Graph& graph() const { return graph_; }
  const std::vector<Label>& labels() const { return f_star_; }
  std::size_t n() const { return graph_.n(); }
  Label label(NodeId u) const { return f_star_.at(u); }
  Hypothesis target() const { return Hypothesis::finite_labeling(f_star_); }
  /// One-hop improvement map over the graph.
  ImprovementMap delta() const { return ImprovementMap::graph_neighborhood(graph_, 1); }

  std::vector<NodeId> positives() const;
  /// Negative nodes with at least one positive neighbor (they could improve).
  std::vector<NodeId> improvable_negatives() const;

 private:
  Graph graph_;
  std::vector<Label> f_star_;
};

struct CoverageStats {
  static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

  /// Minimum degree inside the positive induced subgraph (0 without positives).
  std::size_t d_min_plus = 0;
  /// Minimum number of positive neighbors over improvable negatives;
  /// kInfinite when there are none.
  std::size_t d_min_N = kInfinite;
  std::size_t n_plus = 0;
};

CoverageStats coverage_stats(const GraphInstance& inst);

/// h_S(x) = 1 iff x was sampled and f*(x) = 1.
Hypothesis learn_graph_conservative(const GraphInstance& inst, const std::vector<NodeId>& sample);

/// x is sampled or has a sampled positive neighbor. Requires f*(x) = 1.
bool is_covered(const GraphInstance& inst, NodeId x, const std::vector<NodeId>& sample);
bool all_positives_covered(const GraphInstance& inst, const std::vector<NodeId>& sample);
/// Every improvable negative has a sampled positive neighbor.
bool all_improvable_enabled(const GraphInstance& inst, const std::vector<NodeId>& sample);

/// ceil(c * n (ln n + ln 1/delta) / (d_min_plus + 1)).
std::size_t zero_error_sample_size(std::size_t n, std::size_t d_min_plus, double delta,
                                   double c = 1.0);
/// ceil(c * n (ln n + ln 1/delta) / d_min_N); 0 when d_min_N is kInfinite.
std::size_t enabling_sample_size(std::size_t n, std::size_t d_min_N, double delta, double c = 1.0);

std::vector<NodeId> greedy_dominating_set(const Graph& g);
bool is_dominating_set(const Graph& g, const std::vector<NodeId>& set);

struct TeachingResult {
  std::vector<NodeId> teaching_set;
  Hypothesis h;
};

/// Teaches the labels of a dominating set of the positive subgraph; the
/// student labels exactly those nodes positive. The zero-loss guarantee is
/// verified before returning (InvariantViolation otherwise).
TeachingResult teach_risk_averse_student(const GraphInstance& inst);

/// k disjoint cliques of size n/k.
Graph make_clique_lower_bound(std::size_t n, std::size_t k);

/// Hubs 0..k-1 labeled negative, each attached to a private group of
/// (n-k)/k positive nodes. Groups are cliques unless `clique_groups` is off.
GraphInstance make_star_partition_lower_bound(std::size_t n, std::size_t k,
                                              bool clique_groups = true);

/// m node draws, uniform with replacement.
std::vector<NodeId> sample_nodes(Rng& rng, std::size_t n, std::size_t m);

/// Fraction of trials whose m-node sample leaves some positive uncovered.
/// Trial i uses the stream derive_seed(seed, i).
double coverage_failure_probability(const GraphInstance& inst, std::size_t m,
                                    std::size_t n_trials, std::uint64_t seed,
                                    unsigned jobs = 1);

}  // namespace improvelearn
