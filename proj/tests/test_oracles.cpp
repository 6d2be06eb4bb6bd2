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

#include "improvelearn/errors.hpp"
#include "improvelearn/graph.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/oracles.hpp"
#include "improvelearn/rng.hpp"

using namespace improvelearn;

namespace {

FiniteProblem random_table_problem(Rng& rng, std::size_t n) {
  FiniteProblem p;
  p.space = InstanceSpace::nodes(n);
  for (NodeId u = 0; u < n; ++u) p.points.push_back(Point::node(u));
  std::map<NodeId, std::vector<NodeId>> table;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (v != u && uniform01(rng) < 0.3) table[u].push_back(v);
    }
  }
  p.delta = ImprovementMap::finite_table(table);
  for (int k = 0; k < 4; ++k) {
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform01(rng) < 0.5;
    p.hypotheses.push_back(Hypothesis::finite_labeling(labels));
  }
  return p;
}

}  // namespace

TEST(BruteForce, ReactionSetEnumeration) {
  FiniteProblem p;
  p.space = InstanceSpace::nodes(4);
  for (NodeId u = 0; u < 4; ++u) p.points.push_back(Point::node(u));
  p.delta = ImprovementMap::finite_table({{0, {1, 2, 3}}});
  Hypothesis h = Hypothesis::finite_labeling({0, 1, 1, 0});
  p.hypotheses = {h};
  auto rs = materialize_reaction_set(Point::node(0), h, p.delta, p);
  EXPECT_EQ(rs, (std::vector<Point>{Point::node(1), Point::node(2)}));
  EXPECT_EQ(materialize_reaction_set(Point::node(3), h, p.delta, p), std::vector<Point>{Point::node(3)});
}

TEST(BruteForce, AgreesWithImprovementLoss) {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    FiniteProblem p = random_table_problem(rng, 2 + uniform_index(rng, 9));
    p.validate();
    const Hypothesis& h = p.hypotheses[0];
    const Hypothesis& f = p.hypotheses[1];
    LossSetting s{h, f, p.delta, p.space};
    for (const auto& x : p.points) {
      EXPECT_EQ(brute_force_improvement_loss(x, h, f, p), improvement_loss(x, s).loss_bit);
    }
  }
}

TEST(BruteForce, ValidateEnforcesSizeLimit) {
  FiniteProblem p;
  p.space = InstanceSpace::nodes(20);
  for (NodeId u = 0; u < 20; ++u) p.points.push_back(Point::node(u));
  p.hypotheses = {Hypothesis::constant_zero()};
  EXPECT_THROW(p.validate(), ResourceError);
}

TEST(Svc, SeparationLabelingUnachievable) {
  FiniteProblem p = svc_separation_problem();
  ASSERT_EQ(p.points.size(), 5u);
  auto labelings = svc_achievable_labelings(p, p.points);
  EXPECT_EQ(labelings.count({1, 0, 1, 0, 1}), 0u);
  EXPECT_LE(svc_dimension(p), 4u);
  for (const auto& l : labelings) EXPECT_EQ(l.size(), 5u);
}

TEST(Svc, NoReactionMeansPlainShattering) {
  // With Δ(x) = {x}, achievable labelings are just the hypotheses' restrictions.
  FiniteProblem p;
  p.space = InstanceSpace::line();
  p.points = {Point::scalar(0.2), Point::scalar(0.5), Point::scalar(0.8)};
  p.hypotheses = {Hypothesis::threshold(0.1), Hypothesis::threshold(0.3), Hypothesis::threshold(0.6),
                  Hypothesis::threshold(0.9)};
  p.delta = ImprovementMap::interval_ball(0.0);
  auto l = svc_achievable_labelings(p, p.points);
  EXPECT_EQ(l.size(), 4u);
  EXPECT_EQ(svc_shattering_coefficient(p, 1), 2u);
  EXPECT_EQ(svc_dimension(p), 1u);
}

TEST(Svc, TwoIntervalFamilyAndGrid) {
  auto fam = two_interval_family({0.0, 0.5, 1.0});
  EXPECT_FALSE(fam.empty());
  for (const auto& h : fam) EXPECT_EQ(h.kind(), "UnionOfIntervals");
  auto grid = critical_grid({0.3}, {0.1}, {0.5}, 0.0, 1.0);
  EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
  for (double v : {0.2, 0.3, 0.4, 0.5}) {
    EXPECT_TRUE(std::any_of(grid.begin(), grid.end(), [&](double g) { return std::abs(g - v) < 1e-12; }));
  }
  for (double g : grid) EXPECT_TRUE(g >= 0.0 && g <= 1.0);
}

TEST(Counterexamples, Floors) {
  CounterexampleResult a = run_counterexample("ex3_2", 200, 1000, 0, 1);
  EXPECT_GE(a.metrics.at("mean_improvement_loss"), 0.20);
  CounterexampleResult b = run_counterexample("ex3_6", 20, 1000, 0, 1);
  EXPECT_LE(b.metrics.at("mean_improvement_loss"), 0.02);
  EXPECT_GE(b.metrics.at("min_strategic_grid"), 0.48);
  CounterexampleResult c = run_counterexample("thm4_6_demo", 0, 1, 0, 1);
  EXPECT_GE(c.metrics.at("minmax_loss"), 0.2);
  EXPECT_THROW(run_counterexample("nope", 1, 1, 0, 1), ArgumentError);
}

TEST(Counterexamples, JobsDoNotChangeResults) {
  for (const auto& id : counterexample_ids()) {
    std::size_t m = id == "thm4_6_demo" ? 0 : 30;
    std::size_t n = id == "thm4_6_demo" ? 1 : 50;
    CounterexampleResult a = run_counterexample(id, m, n, 9, 1), b = run_counterexample(id, m, n, 9, 3);
    EXPECT_EQ(a.metrics, b.metrics) << id;
  }
}
