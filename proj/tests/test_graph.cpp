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

#include <gtest/gtest.h>

#include <cmath>
#include <deque>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/graph.hpp"
#include "improvelearn/graph_model.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/rng.hpp"

using namespace improvelearn;

namespace {

Graph random_graph(Rng& rng, std::size_t n, double p) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

// Plain BFS over an adjacency matrix, independent of Graph::bfs_distances.
std::vector<std::vector<std::size_t>> all_pairs(const Graph& g) {
  const std::size_t n = g.n(), inf = n + 1;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
  std::vector<std::vector<std::size_t>> dist(n, std::vector<std::size_t>(n, inf));
  for (NodeId s = 0; s < n; ++s) {
    std::deque<NodeId> q{s};
    dist[s][s] = 0;
    while (!q.empty()) {
      NodeId u = q.front();
      q.pop_front();
      for (NodeId v = 0; v < n; ++v) {
        if (adj[u][v] && dist[s][v] == inf) {
          dist[s][v] = dist[s][u] + 1;
          q.push_back(v);
        }
      }
    }
  }
  return dist;
}

double exact_improvement_loss(const GraphInstance& inst, const Hypothesis& h) {
  Hypothesis f = inst.target();
  ImprovementMap d = inst.delta();
  InstanceSpace sp = InstanceSpace::nodes(inst.n());
  LossSetting s{h, f, d, sp};
  return population_loss_exact(s, DistributionSpec::uniform_nodes(inst.n()), LossKind::kImprovement);
}

}  // namespace

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), ArgumentError);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), ArgumentError);
  EXPECT_THROW(Graph(3, {{0, 3}}), ArgumentError);
}

TEST(Graph, EdgeListRoundTrip) {
  Rng rng(31);
  Graph g = random_graph(rng, 12, 0.3);
  std::string text = g.to_edge_list();
  EXPECT_EQ(Graph::parse_edge_list(text).to_edge_list(), text);
  EXPECT_THROW(Graph::parse_edge_list("3 2\n0 1\n"), ParseError);
}

TEST(Graph, CyclePowerIsFourRegular) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < 6; ++u) edges.emplace_back(u, (u + 1) % 6);
  Graph p = graph_power(Graph(6, edges), 2);
  for (NodeId u = 0; u < 6; ++u) EXPECT_EQ(p.degree(u), 4u);
}

TEST(Graph, PowerMatchesBfsOracle) {
  Rng rng(32);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = random_graph(rng, 2 + uniform_index(rng, 14), uniform(rng, 0.05, 0.4));
    int rho = 1 + static_cast<int>(uniform_index(rng, 4));
    Graph p = graph_power(g, rho);
    auto dist = all_pairs(g);
    for (NodeId u = 0; u < g.n(); ++u) {
      EXPECT_EQ(g.bfs_distances(u), dist[u]);
      for (NodeId v = 0; v < g.n(); ++v) {
        if (u == v) continue;
        EXPECT_EQ(p.has_edge(u, v), dist[u][v] <= static_cast<std::size_t>(rho));
      }
    }
  }
}

TEST(GraphModel, ConservativeLearnerOnTriangle) {
  GraphInstance inst(Graph(3, {{0, 1}, {0, 2}, {1, 2}}), {1, 1, 1});
  Hypothesis h = learn_graph_conservative(inst, {0});
  EXPECT_EQ(h(Point::node(0)), 1);
  EXPECT_EQ(h(Point::node(1)), 0);
  EXPECT_DOUBLE_EQ(exact_improvement_loss(inst, h), 0.0);
}

TEST(GraphModel, CoverageImpliesZeroLoss) {
  Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_index(rng, 20);
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform01(rng) < 0.6;
    GraphInstance inst(random_graph(rng, n, uniform(rng, 0.1, 0.5)), labels);
    std::vector<NodeId> sample = sample_nodes(rng, n, uniform_index(rng, 2 * n));
    double loss = exact_improvement_loss(inst, learn_graph_conservative(inst, sample));
    if (all_positives_covered(inst, sample)) EXPECT_EQ(loss, 0.0);
  }
}

TEST(GraphModel, SampleSizeFormulas) {
  EXPECT_EQ(zero_error_sample_size(1, 0, 0.5, 1.0), 1u);
  EXPECT_EQ(zero_error_sample_size(200, 9, 0.05, 1.0), 166u);
  EXPECT_EQ(enabling_sample_size(10, CoverageStats::kInfinite, 0.05), 0u);
  EXPECT_EQ(enabling_sample_size(100, 10, 0.05, 1.0),
            static_cast<std::size_t>(std::ceil(100 * (std::log(100.0) + std::log(20.0)) / 10)));
}

TEST(GraphModel, GreedyDominatingSetOnCliques) {
  Graph g = make_clique_lower_bound(30, 6);
  std::vector<NodeId> ds = greedy_dominating_set(g);
  EXPECT_EQ(ds.size(), 6u);
  EXPECT_TRUE(is_dominating_set(g, ds));
}

TEST(GraphModel, GreedyDominatingSetIsValid) {
  Rng rng(34);
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = random_graph(rng, 1 + uniform_index(rng, 30), uniform(rng, 0, 0.4));
    EXPECT_TRUE(is_dominating_set(g, greedy_dominating_set(g)));
  }
  EXPECT_FALSE(is_dominating_set(Graph(3, {{0, 1}}), {0}));
}

TEST(Teaching, SmallCases) {
  GraphInstance star(Graph(4, {{0, 1}, {0, 2}, {0, 3}}), {1, 1, 1, 1});
  EXPECT_EQ(teach_risk_averse_student(star).teaching_set, std::vector<NodeId>{0});

  GraphInstance cliques(make_clique_lower_bound(6, 2), std::vector<Label>(6, 1));
  EXPECT_EQ(teach_risk_averse_student(cliques).teaching_set.size(), 2u);

  GraphInstance path(Graph(3, {{0, 1}, {1, 2}}), {1, 1, 1});
  EXPECT_EQ(teach_risk_averse_student(path).teaching_set, std::vector<NodeId>{1});

  GraphInstance neg(Graph(3, {{0, 1}, {1, 2}}), {0, 0, 0});
  EXPECT_TRUE(teach_risk_averse_student(neg).teaching_set.empty());
}

TEST(Teaching, RandomInstancesHaveZeroLoss) {
  Rng rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 25);
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform01(rng) < 0.5;
    GraphInstance inst(random_graph(rng, n, uniform(rng, 0, 0.5)), labels);
    TeachingResult tr = teach_risk_averse_student(inst);
    for (NodeId u : tr.teaching_set) EXPECT_EQ(inst.label(u), 1);
    EXPECT_DOUBLE_EQ(exact_improvement_loss(inst, tr.h), 0.0);
  }
}

TEST(LowerBounds, StarPartitionConstruction) {
  GraphInstance inst = make_star_partition_lower_bound(6, 2);
  EXPECT_EQ(inst.label(0), 0);
  EXPECT_EQ(inst.label(1), 0);
  EXPECT_EQ(inst.graph().degree(0), 2u);
  EXPECT_EQ(inst.graph().degree(1), 2u);
  EXPECT_EQ(inst.positives().size(), 4u);
  GraphInstance big = make_star_partition_lower_bound(110, 10);
  EXPECT_EQ(coverage_stats(big).d_min_N, 10u);
}

TEST(LowerBounds, CoverageFailure) {
  GraphInstance inst(make_clique_lower_bound(100, 20), std::vector<Label>(100, 1));
  const std::size_t huge = static_cast<std::size_t>(50 * 100 * std::log(100.0));
  EXPECT_EQ(coverage_failure_probability(inst, huge, 500, 1), 0.0);
  double p = coverage_failure_probability(inst, 60, 2000, 2, 2);
  EXPECT_GE(p, 0.5);
  EXPECT_LE(p, 0.75);
  EXPECT_EQ(p, coverage_failure_probability(inst, 60, 2000, 2, 1));
}
