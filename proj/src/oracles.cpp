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

#include "improvelearn/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/learners.hpp"
#include "improvelearn/parallel.hpp"

namespace improvelearn {

void FiniteProblem::validate() const {
  if (points.size() > kMaxProblemPoints) {
    throw ResourceError("finite problems are limited to " + std::to_string(kMaxProblemPoints) +
                        " points");
  }
  for (const auto& h : hypotheses) {
    for (const auto& p : points) {
      if (!space.contains(p)) throw ArgumentError("point " + p.to_string() + " outside the space");
      h.predict(p);
    }
  }
}

std::vector<Point> materialize_reaction_set(const Point& x, const Hypothesis& h,
                                            const ImprovementMap& delta,
                                            const FiniteProblem& problem) {
  if (h.predict(x) == 1) return {x};
  std::vector<Point> candidates;
  if (problem.space.finite()) {
    for (NodeId id : enumerate_delta(x, delta, problem.space)) candidates.push_back(Point::node(id));
  } else {
    for (const auto& p : problem.points) {
      if (delta_contains(delta, problem.space, x, p)) candidates.push_back(p);
    }
  }
  std::vector<Point> reach;
  for (auto& p : candidates) {
    if (h.predict(p) == 1) reach.push_back(std::move(p));
  }
  if (reach.empty()) return {x};
  return reach;
}

Label brute_force_improvement_loss(const Point& x, const Hypothesis& h, const Hypothesis& f_star,
                                   const FiniteProblem& problem) {
  for (const auto& p : materialize_reaction_set(x, h, problem.delta, problem)) {
    if (h.predict(p) != f_star.predict(p)) return 1;
  }
  return 0;
}

std::set<std::vector<Label>> svc_achievable_labelings(const FiniteProblem& problem,
                                                      const std::vector<Point>& tuple) {
  if (tuple.size() > kMaxTuple) {
    throw ResourceError("shattering enumeration is limited to tuples of " +
                        std::to_string(kMaxTuple) + " points");
  }
  std::set<std::vector<Label>> out;
  for (const auto& h : problem.hypotheses) {
    std::vector<Label> lab(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      lab[i] = h.predict(tuple[i]) == 1 ||
               find_reachable(tuple[i], problem.delta, problem.space, {{&h, 1}}).has_value();
    }
    out.insert(std::move(lab));
  }
  return out;
}

std::size_t svc_shattering_coefficient(const FiniteProblem& problem, std::size_t n) {
  problem.validate();
  const std::size_t k = problem.points.size();
  if (n > k) return svc_shattering_coefficient(problem, k);
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  std::size_t best = 0;
  do {
    std::vector<Point> tuple;
    for (std::size_t i = 0; i < k; ++i) {
      if (pick[i]) tuple.push_back(problem.points[i]);
    }
    best = std::max(best, svc_achievable_labelings(problem, tuple).size());
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

std::size_t svc_dimension(const FiniteProblem& problem) {
  std::size_t dim = 0;
  for (std::size_t n = 1; n <= std::min(problem.points.size(), kMaxTuple); ++n) {
    if (svc_shattering_coefficient(problem, n) == (std::size_t{1} << n)) dim = n;
  }
  return dim;
}

std::vector<double> critical_grid(const std::vector<double>& points, const std::vector<double>& radii,
                                  const std::vector<double>& boundaries, double lo, double hi) {
  std::vector<double> g = {lo, hi};
  for (double p : points) {
    g.push_back(p);
    for (double r : radii) {
      g.push_back(p - r);
      g.push_back(p + r);
    }
  }
  g.insert(g.end(), boundaries.begin(), boundaries.end());
  std::erase_if(g, [&](double v) { return v < lo || v > hi; });
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::size_t base = g.size();
  for (std::size_t i = 0; i + 1 < base; ++i) g.push_back(0.5 * (g[i] + g[i + 1]));
  std::sort(g.begin(), g.end());
  return g;
}

std::vector<Hypothesis> two_interval_family(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const std::size_t k = grid.size();
  std::vector<Hypothesis> out;
  std::set<std::vector<Interval>> seen;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      for (std::size_t c = b; c < k; ++c) {
        for (std::size_t d = c; d < k; ++d) {
          std::vector<Interval> parts;
          if (a < b) parts.push_back(Interval::closed_open(grid[a], grid[b]));
          if (c < d) parts.push_back(Interval::open_closed(grid[c], grid[d]));
          if (!seen.insert(parts).second) continue;
          out.push_back(Hypothesis::union_of_intervals(std::move(parts)));
        }
      }
    }
  }
  return out;
}

namespace {

ImprovementMap svc_separation_delta() {
  return ImprovementMap::piecewise(
      {{IntervalSet::of(Interval::closed_open(0.0, 0.75)), ImprovementMap::interval_ball(0.25, true)},
       {IntervalSet::of(Interval::closed(0.75, 1.0)), ImprovementMap::interval_ball(0.0)}});
}

}  // namespace

FiniteProblem svc_separation_problem() {
  FiniteProblem p;
  p.space = InstanceSpace::line(0.0, 1.0);
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) p.points.push_back(Point::scalar(v));
  p.delta = svc_separation_delta();
  p.hypotheses = two_interval_family(critical_grid({0.0, 0.25, 0.5, 0.75, 1.0}, {0.25}, {0.75}, 0, 1));
  return p;
}

const std::vector<std::string>& counterexample_ids() {
  static const std::vector<std::string> ids = {"ex3_1", "ex3_2", "thm3_5",
                                               "ex3_6", "exB_1", "thm4_6_demo"};
  return ids;
}

namespace {

Sample draw_sample(Rng& rng, const DistributionSpec& dist, const Hypothesis& f, std::size_t m) {
  Sample s;
  s.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Point x = dist.sample(rng);
    Label y = f.predict(x);
    s.emplace_back(std::move(x), y);
  }
  return s;
}

// Smallest closed interval containing the positives.
Hypothesis hull_learner(const Sample& s) {
  double lo = 0, hi = 0;
  bool any = false;
  for (const auto& ex : s) {
    if (!ex.label) continue;
    lo = any ? std::min(lo, ex.point[0]) : ex.point[0];
    hi = any ? std::max(hi, ex.point[0]) : ex.point[0];
    any = true;
  }
  if (!any) return Hypothesis::constant_zero();
  return Hypothesis::union_of_intervals({Interval::closed(lo, hi)});
}

Hypothesis hole_target(double lo, double b, double hi) {
  return Hypothesis::union_of_intervals({Interval::closed_open(lo, b), Interval::open_closed(b, hi)});
}

double exact_line_loss(const Hypothesis& h, const Hypothesis& f, const ImprovementMap& delta,
                       LossKind kind) {
  InstanceSpace space = InstanceSpace::line(0.0, 1.0);
  LossSetting s{h, f, delta, space};
  return population_loss_uniform_line(s, kind);
}

void summarize(CounterexampleResult& r) {
  std::vector<double> imp, str, std01;
  for (const auto& t : r.trials) {
    imp.push_back(t.improvement_loss);
    if (t.strategic_loss) str.push_back(*t.strategic_loss);
    if (t.standard_loss) std01.push_back(*t.standard_loss);
  }
  r.improvement = estimate_from(imp);
  if (!str.empty()) r.strategic = estimate_from(str);
  if (!std01.empty()) r.standard = estimate_from(std01);
  double zero = 0;
  for (double v : imp) zero += v == 0.0;
  r.metrics["zero_loss_fraction"] = imp.empty() ? 0.0 : zero / static_cast<double>(imp.size());
}

// Open intervals inside [-1, 1]; the target is 0 on x < 0 and on the
// rationals, 1 elsewhere, and Δ(x) is the set of rationals. Every nonempty
// open interval contains rationals (f* = 0 there), so the evaluator works on
// Lebesgue measure directly.
struct RationalHoleEvaluator {
  static double clip_len(double a, double b, double lo, double hi) {
    return std::max(0.0, std::min(b, hi) - std::max(a, lo));
  }
  static double improvement(const std::vector<std::pair<double, double>>& h) {
    double pos_right = 0, total = 0;
    for (auto [a, b] : h) {
      pos_right += clip_len(a, b, 0.0, 1.0);
      total += clip_len(a, b, -1.0, 1.0);
    }
    if (total == 0.0) return 0.5;  // nobody moves; positives on [0,1] are missed
    // h-negative agents all reach a rational h-positive point (f* = 0 there);
    // h-positive agents err iff x < 0.
    return 1.0 - pos_right / 2.0;
  }
  static double standard(const std::vector<std::pair<double, double>>& h) {
    double pos_left = 0, pos_right = 0;
    for (auto [a, b] : h) {
      pos_left += clip_len(a, b, -1.0, 0.0);
      pos_right += clip_len(a, b, 0.0, 1.0);
    }
    return pos_left / 2.0 + (1.0 - pos_right) / 2.0;
  }
};

CounterexampleResult run_trials(const std::string& id, std::size_t m, std::size_t n_trials,
                                std::uint64_t seed, unsigned jobs) {
  CounterexampleResult r;
  r.id = id;
  r.m = m;
  r.trials.resize(n_trials);
  const auto unit = DistributionSpec::uniform_interval(0.0, 1.0);
  parallel_for(n_trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    CounterexampleTrial& out = r.trials[t];
    if (id == "ex3_1") {
      Hypothesis f = Hypothesis::union_of_intervals(
          {Interval::closed_open(0.1, 0.3), Interval::open_closed(0.5, 0.65)});
      Hypothesis h = learn_singleton_positive(draw_sample(rng, unit, f, m));
      out.improvement_loss =
          exact_line_loss(h, f, ImprovementMap::whole_space(), LossKind::kImprovement);
    } else if (id == "ex3_2") {
      double b = uniform(rng, 0.25, 0.75);
      Hypothesis f = hole_target(0.25, b, 0.75);
      ImprovementMap delta = ImprovementMap::piecewise(
          {{IntervalSet({Interval::closed_open(0.0, 0.25), Interval::open_closed(0.75, 1.0)}),
            ImprovementMap::whole_space()},
           {IntervalSet::of(Interval::closed(0.25, 0.75)), ImprovementMap::interval_ball(0.0)}});
      Hypothesis h = hull_learner(draw_sample(rng, unit, f, m));
      out.target_param = b;
      out.improvement_loss = exact_line_loss(h, f, delta, LossKind::kImprovement);
      out.standard_loss = exact_line_loss(h, f, ImprovementMap::interval_ball(0.0),
                                          LossKind::kImprovement);
    } else if (id == "thm3_5") {
      double b = uniform(rng, 0.75, 1.0);
      Hypothesis f = hole_target(0.5, b, 1.0);
      Hypothesis h = hull_learner(draw_sample(rng, unit, f, m));
      out.target_param = b;
      out.improvement_loss = exact_line_loss(h, f, svc_separation_delta(), LossKind::kImprovement);
      out.strategic_loss = exact_line_loss(h, f, svc_separation_delta(), LossKind::kStrategic);
    } else if (id == "ex3_6") {
      Hypothesis f = Hypothesis::threshold(0.5);
      Hypothesis h = learn_singleton_positive(draw_sample(rng, unit, f, m));
      ImprovementMap delta = ImprovementMap::whole_space();
      out.improvement_loss = exact_line_loss(h, f, delta, LossKind::kImprovement);
      out.strategic_loss = exact_line_loss(h, f, delta, LossKind::kStrategic);
    } else if (id == "exB_1") {
      double lo = 0, hi = 0;
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        double x = uniform(rng, -1.0, 1.0);
        if (x < 0) continue;
        lo = any ? std::min(lo, x) : x;
        hi = any ? std::max(hi, x) : x;
        any = true;
      }
      std::vector<std::pair<double, double>> h;
      if (any && lo < hi) h.emplace_back(lo, hi);
      out.improvement_loss = RationalHoleEvaluator::improvement(h);
      out.standard_loss = RationalHoleEvaluator::standard(h);
    }
  });
  summarize(r);
  return r;
}

CounterexampleResult run_thm4_6_demo() {
  // Nodes: 0 = x' (negative under every h), 1 = s1, 2 = s2, 3 = x1, 4 = x2.
  auto lab = [](std::initializer_list<NodeId> pos) {
    std::vector<Label> l(5, 0);
    for (NodeId u : pos) l[u] = 1;
    return Hypothesis::finite_labeling(l);
  };
  std::vector<Hypothesis> H = {lab({1, 2, 3}), lab({1, 2, 4}), lab({1, 3, 4}), lab({2})};
  const Hypothesis& h1 = H[0];
  const Hypothesis& h2 = H[1];
  std::vector<Point> S = {Point::node(1), Point::node(2)};

  ClosureOperator op = ClosureOperator::finite_class_unchecked(H);
  Hypothesis clos = op.close(S);
  bool clos_in_class = false;
  for (const auto& h : H) clos_in_class |= h.get_if<FiniteLabeling>()->labels ==
                                           clos.get_if<FiniteLabeling>()->labels;
  if (clos_in_class) throw InvariantViolation("demo class must not be intersection-closed on S");

  // Δ(x') = X \ S; every other point has an empty improvement set.
  ImprovementMap delta = ImprovementMap::finite_table({{0, {0, 3, 4}}});
  InstanceSpace space = InstanceSpace::nodes(5);
  std::vector<Point> support = {Point::node(0)};
  for (NodeId u = 1; u < 5; ++u) {
    if (clos.predict(Point::node(u))) support.push_back(Point::node(u));
  }
  std::vector<double> w(support.size(), 1.0 / static_cast<double>(support.size()));
  auto dist = DistributionSpec::finite_discrete(support, w);

  CounterexampleResult r;
  r.id = "thm4_6_demo";
  double minmax = 1.0;
  double min_loss_any = 1.0;
  for (std::size_t i = 0; i < H.size(); ++i) {
    double worst = 0.0;
    for (const Hypothesis* f : {&h1, &h2}) {
      LossSetting s{H[i], *f, delta, space};
      double loss = population_loss_exact(s, dist, LossKind::kImprovement);
      worst = std::max(worst, loss);
      CounterexampleTrial t;
      t.improvement_loss = loss;
      t.target_param = f == &h1 ? 1.0 : 2.0;
      r.trials.push_back(t);
    }
    r.metrics["worst_loss_h" + std::to_string(i + 1)] = worst;
    minmax = std::min(minmax, worst);
  }
  for (const auto& t : r.trials) min_loss_any = std::min(min_loss_any, t.improvement_loss);
  r.improvement = estimate_from({minmax});
  r.metrics["minmax_loss"] = minmax;
  r.metrics["hypotheses"] = static_cast<double>(H.size());
  r.metrics["support_size"] = static_cast<double>(support.size());
  return r;
}

std::size_t default_m(const std::string& id) {
  if (id == "ex3_1") return static_cast<std::size_t>(std::ceil((1 / 0.1) * std::log(1 / 0.1)));
  if (id == "ex3_6") return 20;
  if (id == "exB_1") return 50;
  return 200;
}

}  // namespace

CounterexampleResult run_counterexample(const std::string& id, std::size_t m,
                                        std::size_t n_trials, std::uint64_t seed, unsigned jobs) {
  const auto& ids = counterexample_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw ArgumentError("unknown counterexample scenario '" + id + "'");
  }
  if (id == "thm4_6_demo") return run_thm4_6_demo();
  if (n_trials == 0) throw ArgumentError("counterexample needs n_trials >= 1");
  if (m == 0) m = default_m(id);
  CounterexampleResult r = run_trials(id, m, n_trials, seed, jobs);

  if (id == "ex3_6") {
    // Best strategic loss over h-, h+, singletons and thresholds on a grid.
    Hypothesis f = Hypothesis::threshold(0.5);
    ImprovementMap delta = ImprovementMap::whole_space();
    std::vector<Hypothesis> grid = {Hypothesis::constant_zero(), Hypothesis::constant_one()};
    for (int k = 0; k <= 20; ++k) {
      grid.push_back(Hypothesis::singleton_positive(Point::scalar(k / 20.0)));
      grid.push_back(Hypothesis::threshold(k / 20.0));
    }
    double best = 1.0;
    for (const auto& h : grid) best = std::min(best, exact_line_loss(h, f, delta, LossKind::kStrategic));
    r.metrics["min_strategic_grid"] = best;
    r.metrics["grid_size"] = static_cast<double>(grid.size());
  } else if (id == "exB_1") {
    // Unions of up to two open intervals with endpoints on a 1/8 grid.
    std::vector<double> g;
    for (int k = -8; k <= 8; ++k) g.push_back(k / 8.0);
    double best_imp = RationalHoleEvaluator::improvement({});
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        best_imp = std::min(best_imp, RationalHoleEvaluator::improvement({{g[a], g[b]}}));
        for (std::size_t c = b; c < g.size(); ++c) {
          for (std::size_t d = c + 1; d < g.size(); ++d) {
            best_imp = std::min(best_imp,
                                RationalHoleEvaluator::improvement({{g[a], g[b]}, {g[c], g[d]}}));
          }
        }
      }
    }
    r.metrics["d_improve"] = best_imp;
    r.metrics["d_standard"] = RationalHoleEvaluator::standard({{0.0, 1.0}});
  }
  r.metrics["mean_improvement_loss"] = r.improvement.mean;
  return r;
}

}  // namespace improvelearn
