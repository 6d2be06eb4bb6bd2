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

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/graph.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/improvement_map.hpp"
#include "improvelearn/instance_space.hpp"
#include "improvelearn/interval_set.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/parallel.hpp"
#include "improvelearn/reaction.hpp"
#include "improvelearn/rng.hpp"

using namespace improvelearn;

namespace {

IntervalSet random_set(Rng& rng) {
  std::vector<double> cuts;
  std::size_t k = 2 * (1 + uniform_index(rng, 3));
  for (std::size_t i = 0; i < k; ++i) cuts.push_back(std::round(uniform01(rng) * 20) / 20);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
    if (cuts[i] < cuts[i + 1] && (parts.empty() || parts.back().hi < cuts[i])) {
      parts.push_back(Interval::closed(cuts[i], cuts[i + 1]));
    }
  }
  return IntervalSet(parts);
}

// Closed-form improvement loss for thresholds under a closed interval ball.
Label threshold_loss_oracle(double x, double t, double s, double r) {
  if (x >= t) return x < s;
  if (x + r >= t) return t < s;
  return x >= s;
}

}  // namespace

TEST(IntervalSet, MergesAndMeasures) {
  IntervalSet a({Interval::closed(0, 0.3), Interval::closed(0.2, 0.5), Interval::open(0.7, 0.9)});
  ASSERT_EQ(a.parts().size(), 2u);
  EXPECT_DOUBLE_EQ(a.measure(), 0.7);
  EXPECT_TRUE(a.contains(0.5));
  EXPECT_FALSE(a.contains(0.7));
  EXPECT_FALSE(a.contains(0.6));
}

TEST(IntervalSet, EndpointSemantics) {
  IntervalSet a = IntervalSet::of(Interval::closed_open(0, 1));
  IntervalSet c = a.complement();
  EXPECT_TRUE(c.contains(1.0));
  EXPECT_FALSE(c.contains(0.0));
  EXPECT_TRUE(c.contains(-5.0));
  EXPECT_TRUE(a.unite(c) == IntervalSet::all());
  EXPECT_TRUE(a.intersect(c).empty());
}

TEST(IntervalSet, AlgebraProperties) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    IntervalSet a = random_set(rng), b = random_set(rng);
    EXPECT_TRUE(a.complement().complement() == a);
    EXPECT_NEAR(a.unite(b).measure() + a.intersect(b).measure(), a.measure() + b.measure(), 1e-12);
    for (int k = 0; k <= 40; ++k) {
      double x = k / 40.0;
      EXPECT_EQ(a.unite(b).contains(x), a.contains(x) || b.contains(x));
      EXPECT_EQ(a.intersect(b).contains(x), a.contains(x) && b.contains(x));
    }
  }
}

TEST(Hypothesis, PredictsEachFamily) {
  EXPECT_EQ(Hypothesis::threshold(0.5)(Point::scalar(0.5)), 1);
  EXPECT_EQ(Hypothesis::threshold(0.5)(Point::scalar(0.49)), 0);
  Hypothesis rect = Hypothesis::rectangle({0.1, 0.2}, {0.5, 0.6});
  EXPECT_EQ(rect(Point{0.1, 0.6}), 1);
  EXPECT_EQ(rect(Point{0.05, 0.3}), 0);
  EXPECT_EQ(Hypothesis::homogeneous_halfspace({0, 0, 1})(Point{0, 0, 1}), 1);
  EXPECT_EQ(Hypothesis::finite_labeling({0, 1})(Point::node(1)), 1);
  EXPECT_EQ(Hypothesis::constant_one()(Point::scalar(3)), 1);
  EXPECT_THROW(Hypothesis::rectangle({0.5}, {0.1}), ArgumentError);
}

TEST(Point, SphereRequiresUnitNorm) {
  EXPECT_NO_THROW(Point::on_sphere({0.6, 0.8, 0}));
  EXPECT_THROW(Point::on_sphere({1, 1, 0}), ArgumentError);
}

TEST(ImprovementLoss, ThresholdForgivesTrueImprovement) {
  Hypothesis h = Hypothesis::threshold(0.55), f = Hypothesis::threshold(0.5);
  ImprovementMap d = ImprovementMap::interval_ball(0.1);
  InstanceSpace sp = InstanceSpace::line();
  LossSetting s{h, f, d, sp};
  ReactionOutcome o = improvement_loss(Point::scalar(0.5), s);
  EXPECT_TRUE(o.moved);
  EXPECT_EQ(o.loss_bit, 0);
}

TEST(ImprovementLoss, WholeSpaceFindsFalsePositiveWitness) {
  Hypothesis h = Hypothesis::union_of_intervals({Interval::closed(0.1, 0.2), Interval::closed(0.7, 0.8)});
  Hypothesis f = Hypothesis::threshold(0.5);
  ImprovementMap d = ImprovementMap::whole_space();
  InstanceSpace sp = InstanceSpace::line();
  LossSetting s{h, f, d, sp};
  ReactionOutcome o = improvement_loss(Point::scalar(0.4), s);
  EXPECT_EQ(o.loss_bit, 1);
  ASSERT_TRUE(o.witness.has_value());
  EXPECT_EQ(h(*o.witness), 1);
  EXPECT_EQ(f(*o.witness), 0);
}

TEST(ImprovementLoss, MatchesThresholdOracle) {
  Rng rng(5);
  InstanceSpace sp = InstanceSpace::line();
  for (int trial = 0; trial < 2000; ++trial) {
    double t = uniform01(rng), s0 = uniform01(rng), r = uniform(rng, 0, 0.3), x = uniform01(rng);
    Hypothesis h = Hypothesis::threshold(t), f = Hypothesis::threshold(s0);
    ImprovementMap d = ImprovementMap::interval_ball(r);
    LossSetting s{h, f, d, sp};
    ASSERT_EQ(improvement_loss(Point::scalar(x), s).loss_bit, threshold_loss_oracle(x, t, s0, r))
        << "t=" << t << " s=" << s0 << " r=" << r << " x=" << x;
  }
}

TEST(ImprovementLoss, ZeroRadiusIsStandardLoss) {
  Rng rng(6);
  InstanceSpace sp = InstanceSpace::unit_box(2);
  ImprovementMap d = ImprovementMap::linf_ball(0.0);
  for (int trial = 0; trial < 300; ++trial) {
    Hypothesis h = Hypothesis::rectangle({uniform(rng, 0, .5), uniform(rng, 0, .5)},
                                         {uniform(rng, .5, 1), uniform(rng, .5, 1)});
    Hypothesis f = Hypothesis::rectangle({uniform(rng, 0, .5), uniform(rng, 0, .5)},
                                         {uniform(rng, .5, 1), uniform(rng, .5, 1)});
    LossSetting s{h, f, d, sp};
    Point x{uniform01(rng), uniform01(rng)};
    EXPECT_EQ(improvement_loss(x, s).loss_bit, h(x) != f(x));
  }
}

TEST(StrategicLoss, FlagsGamingNegative) {
  Hypothesis h = Hypothesis::threshold(0.55), f = Hypothesis::threshold(0.5);
  ImprovementMap d = ImprovementMap::interval_ball(0.1);
  InstanceSpace sp = InstanceSpace::line();
  LossSetting s{h, f, d, sp};
  EXPECT_EQ(strategic_loss(Point::scalar(0.5), s), 0);
  EXPECT_EQ(strategic_loss(Point::scalar(0.48), s), 1);
  EXPECT_EQ(improvement_loss(Point::scalar(0.48), s).loss_bit, 0);
}

TEST(EnablingLoss, PathGraphCases) {
  Graph g(3, {{0, 1}, {1, 2}});
  Hypothesis f = Hypothesis::finite_labeling({1, 0, 0});
  ImprovementMap d = ImprovementMap::graph_neighborhood(g);
  InstanceSpace sp = InstanceSpace::nodes(3);
  Hypothesis h_moves = Hypothesis::finite_labeling({1, 0, 0});
  Hypothesis h_stuck = Hypothesis::constant_zero();
  LossSetting a{h_moves, f, d, sp}, b{h_stuck, f, d, sp};
  EXPECT_EQ(enabling_loss(Point::node(1), a), 0);
  EXPECT_EQ(enabling_loss(Point::node(1), b), 1);
  EXPECT_EQ(enabling_loss(Point::node(0), b), 0);
}

TEST(PopulationLoss, UniformLineErrorStrip) {
  Hypothesis h = Hypothesis::threshold(0.58), f = Hypothesis::threshold(0.5);
  ImprovementMap d = ImprovementMap::interval_ball(0.03);
  InstanceSpace sp = InstanceSpace::line();
  LossSetting s{h, f, d, sp};
  EXPECT_NEAR(population_loss_uniform_line(s, LossKind::kImprovement), 0.05, 1e-12);
  Estimate e = population_loss_mc(s, DistributionSpec::uniform_interval(), 20000,
                                  LossKind::kImprovement, 3);
  EXPECT_NEAR(e.mean, 0.05, 4 * e.std_error);
}

TEST(PopulationLoss, UniformLineMatchesDenseGrid) {
  Rng rng(8);
  InstanceSpace sp = InstanceSpace::line();
  for (int trial = 0; trial < 100; ++trial) {
    double a = uniform(rng, 0, 0.5), b = uniform(rng, 0.5, 1);
    Hypothesis h = Hypothesis::union_of_intervals({Interval::closed(a, b)});
    Hypothesis f = Hypothesis::threshold(uniform01(rng));
    ImprovementMap d = ImprovementMap::interval_ball(uniform(rng, 0, 0.2));
    LossSetting s{h, f, d, sp};
    double exact = population_loss_uniform_line(s, LossKind::kImprovement);
    const int N = 4000;
    double grid = 0;
    for (int i = 0; i < N; ++i) grid += improvement_loss(Point::scalar((i + 0.5) / N), s).loss_bit;
    EXPECT_NEAR(exact, grid / N, 2.0 / N * 4);
  }
}

TEST(PopulationLoss, FiniteExactMatchesMonteCarlo) {
  Rng rng(9);
  std::vector<Point> pts;
  std::vector<double> w;
  for (int i = 0; i < 10; ++i) {
    pts.push_back(Point::scalar(i / 10.0 + 0.01));
    w.push_back(0.1);
  }
  DistributionSpec dist = DistributionSpec::finite_discrete(pts, w);
  Hypothesis h = Hypothesis::threshold(0.62), f = Hypothesis::threshold(0.35);
  ImprovementMap d = ImprovementMap::interval_ball(0.15);
  InstanceSpace sp = InstanceSpace::line();
  LossSetting s{h, f, d, sp};
  double exact = population_loss_exact(s, dist, LossKind::kImprovement);
  // Only 0.41 is f*-positive and too far from 0.62 to move.
  EXPECT_NEAR(exact, 0.1, 1e-12);
  Estimate e = population_loss_mc(s, dist, 20000, LossKind::kImprovement, 4);
  EXPECT_NEAR(e.mean, exact, 3 * e.std_error + 1e-12);
}

TEST(PopulationLoss, GraphEnumerations) {
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  Hypothesis h = Hypothesis::finite_labeling({1, 0, 0}), f = Hypothesis::finite_labeling({1, 1, 1});
  ImprovementMap d = ImprovementMap::graph_neighborhood(k3);
  InstanceSpace sp = InstanceSpace::nodes(3);
  LossSetting s{h, f, d, sp};
  EXPECT_DOUBLE_EQ(population_loss_exact(s, DistributionSpec::uniform_nodes(3), LossKind::kImprovement), 0.0);

  Graph two(4, {{0, 1}, {2, 3}});
  Hypothesis h2 = Hypothesis::finite_labeling({1, 0, 0, 0}), f2 = Hypothesis::finite_labeling({1, 1, 1, 1});
  ImprovementMap d2 = ImprovementMap::graph_neighborhood(two);
  InstanceSpace sp2 = InstanceSpace::nodes(4);
  LossSetting s2{h2, f2, d2, sp2};
  EXPECT_DOUBLE_EQ(population_loss_exact(s2, DistributionSpec::uniform_nodes(4), LossKind::kImprovement), 0.5);
}

TEST(PopulationLoss, HalfspaceDisagreementIsAngleOverPi) {
  EXPECT_NEAR(halfspace_disagreement_mass({1, 0, 0}, {0, 1, 0}), 0.5, 1e-12);
  EXPECT_NEAR(halfspace_disagreement_mass({1, 0, 0}, {1, 0, 0}), 0.0, 1e-12);
}

TEST(Reaction, FindReachableRespectsRequirements) {
  Hypothesis h = Hypothesis::threshold(0.7), f = Hypothesis::threshold(0.75);
  ImprovementMap d = ImprovementMap::interval_ball(0.1);
  InstanceSpace sp = InstanceSpace::line();
  auto y = find_reachable(Point::scalar(0.65), d, sp, {{&h, 1}, {&f, 0}});
  ASSERT_TRUE(y.has_value());
  EXPECT_TRUE((*y)[0] >= 0.7 && (*y)[0] < 0.75);
  EXPECT_FALSE(find_reachable(Point::scalar(0.5), d, sp, {{&h, 1}}).has_value());
}

TEST(Rng, StreamsAreReproducible) {
  Rng a = make_stream(42, 3), b = make_stream(42, 3), c = make_stream(42, 4);
  EXPECT_EQ(a(), b());
  EXPECT_NE(make_stream(42, 3)(), c());
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    double v = uniform01(u);
    ASSERT_TRUE(v >= 0 && v < 1);
    ASSERT_LT(uniform_index(u, 7), 7u);
  }
}

TEST(Parallel, RunsEveryIndexAndRethrowsLowestFailure) {
  std::vector<int> hit(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hit[i] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 100);
  try {
    parallel_for(50, 4, [](std::size_t i) {
      if (i == 7 || i == 31) throw ArgumentError("bad " + std::to_string(i));
    });
    FAIL();
  } catch (const ArgumentError& e) {
    EXPECT_STREQ(e.what(), "bad 7");
  }
}
