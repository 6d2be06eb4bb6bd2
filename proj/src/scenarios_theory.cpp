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

#include <algorithm>
#include <cmath>
#include <set>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/learners.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/oracles.hpp"
#include "improvelearn/parallel.hpp"
#include "improvelearn/rng.hpp"
#include "scenario_impl.hpp"

namespace improvelearn::detail {

namespace {

double real(const Json& p, const char* key) { return p.at(key).get<double>(); }

double probability(const Json& p, const char* key) {
  double v = real(p, key);
  if (!(v > 0 && v < 1)) throw ArgumentError(std::string("parameter '") + key + "' must lie in (0, 1)");
  return v;
}

std::size_t ceil_size(double v) { return static_cast<std::size_t>(std::ceil(v - 1e-9)); }

}  // namespace

ScenarioResult run_thresholds(const Json& p, std::uint64_t seed, unsigned jobs) {
  const double eps = probability(p, "eps");
  const double delta = probability(p, "delta");
  const double r = real(p, "r");
  if (!(r >= 0)) throw ArgumentError("parameter 'r' must be >= 0");
  std::size_t m = param_count(p, "m");
  if (m == 0) m = ceil_size(std::log(1 / delta) / eps);
  const std::size_t trials = param_positive_count(p, "trials");
  const double bound = std::max(eps - r, 0.0);

  ScenarioResult out;
  out.columns = {"trial", "t_star", "t_hat", "loss", "zero_loss", "within_bound"};
  out.rows.resize(trials);
  const InstanceSpace space = InstanceSpace::line(0.0, 1.0);
  const ImprovementMap delta_map = ImprovementMap::interval_ball(r);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    double t_star = uniform01(rng);
    Hypothesis f = Hypothesis::threshold(t_star);
    Sample s;
    for (std::size_t i = 0; i < m; ++i) {
      Point x = Point::scalar(uniform01(rng));
      Label y = f(x);
      s.emplace_back(std::move(x), y);
    }
    Hypothesis h = learn_threshold_conservative(s);
    LossSetting setting{h, f, delta_map, space};
    double loss = population_loss_uniform_line(setting, LossKind::kImprovement);
    out.rows[t] = {num(t), num(t_star), num(h.get_if<Threshold>()->t), num(loss),
                   loss == 0.0 ? "1" : "0", loss <= bound + 1e-12 ? "1" : "0"};
  });
  out.metrics["m"] = m;
  out.metrics["bound"] = bound;
  out.metrics["zero_loss_fraction"] = fraction_of_ones(out, 4);
  out.metrics["within_bound_fraction"] = fraction_of_ones(out, 5);
  out.metrics["mean_loss"] = column_mean(out, 3);
  return out;
}

ScenarioResult run_rectangles(const Json& p, std::uint64_t seed, unsigned jobs) {
  const double eps = probability(p, "eps");
  const double delta = probability(p, "delta");
  const double r = real(p, "r");
  if (!(r >= 0)) throw ArgumentError("parameter 'r' must be >= 0");
  std::size_t m = param_count(p, "m");
  if (m == 0) m = ceil_size((2 + std::log(1 / delta)) / eps);
  const std::size_t trials = param_positive_count(p, "trials");
  const std::size_t n_ir = param_positive_count(p, "ir_samples");

  ScenarioResult out;
  out.columns = {"trial",     "l1",       "l2",     "ir_closed_form", "ir_mc",
                 "ir_stderr", "ir_match", "pre_fp", "post_fp",        "loss_mc"};
  out.rows.resize(trials);
  std::vector<std::size_t> violations(trials, 0);
  const InstanceSpace space = InstanceSpace::unit_box(2);
  const ImprovementMap delta_map = ImprovementMap::linf_ball(r);
  const auto unif = DistributionSpec::uniform_box(2);
  const ClosureOperator op = ClosureOperator::rectangles();
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    std::vector<double> lo(2), hi(2);
    for (int i = 0; i < 2; ++i) {
      lo[i] = uniform(rng, 0.05, 0.45);
      hi[i] = lo[i] + uniform(rng, 0.2, 0.5);
    }
    Hypothesis f = Hypothesis::rectangle(lo, hi);
    Sample s;
    for (const Point& x : unif.sample_n(rng, m)) s.emplace_back(x, f(x));
    Hypothesis h = closure_learn(s, op);
    LossSetting setting{h, f, delta_map, space};

    double l1 = 0, l2 = 0;
    bool pre_fp = false;
    if (const auto* rect = h.get_if<Rectangle>()) {
      l1 = rect->hi[0] - rect->lo[0];
      l2 = rect->hi[1] - rect->lo[1];
      for (int i = 0; i < 2; ++i) pre_fp |= rect->lo[i] < lo[i] || rect->hi[i] > hi[i];
    }
    ImprovementRegionReport ir = improvement_region_mass(setting, unif, n_ir, rng());
    double cf = ir.closed_form.value_or(h.get_if<ConstantZero>() ? 0.0 : std::nan(""));
    bool match = std::abs(ir.mass - cf) <= 4 * ir.mc_stderr + 1e-12;

    Rng eval(rng());
    std::size_t post_fp = 0, lost = 0;
    for (std::size_t i = 0; i < n_ir; ++i) {
      ReactionOutcome o = improvement_loss(unif.sample(eval), setting);
      lost += o.loss_bit;
      post_fp += o.moved && o.loss_bit;
    }
    violations[t] = pre_fp + (post_fp > 0);
    out.rows[t] = {num(t),           num(l1),           num(l2),       num(cf),
                   num(ir.mass),     num(ir.mc_stderr), match ? "1" : "0",
                   pre_fp ? "1" : "0", num(post_fp),
                   num(static_cast<double>(lost) / static_cast<double>(n_ir))};
  });
  std::size_t total = 0;
  for (auto v : violations) total += v;
  out.metrics["m"] = m;
  out.metrics["fp_violations"] = total;
  out.metrics["ir_match_fraction"] = fraction_of_ones(out, 6);
  out.metrics["mean_ir_mass"] = column_mean(out, 4);
  out.metrics["mean_loss"] = column_mean(out, 9);
  return out;
}

ScenarioResult run_intersection_closed(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t trials = param_positive_count(p, "trials");
  const std::size_t max_points = param_count(p, "max_points");
  if (max_points < 2 || max_points > kMaxProblemPoints) {
    throw ArgumentError("parameter 'max_points' must lie in [2, 16]");
  }
  const std::size_t generators = param_positive_count(p, "generators");
  if (generators > 10) throw ArgumentError("parameter 'generators' must be <= 10");
  const std::size_t sample_size = param_count(p, "sample_size");

  ScenarioResult out;
  out.columns = {"trial", "n_points", "family_size", "m", "improvement_loss", "standard_loss",
                 "violations"};
  out.rows.resize(trials);
  std::vector<std::size_t> violations(trials, 0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    const std::size_t n = 2 + uniform_index(rng, max_points - 1);
    std::set<std::vector<Label>> family;
    for (std::size_t g = 0; g < generators; ++g) {
      std::vector<Label> l(n);
      for (auto& v : l) v = uniform01(rng) < 0.5;
      family.insert(l);
    }
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<std::vector<Label>> members(family.begin(), family.end());
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          std::vector<Label> both(n);
          for (std::size_t i = 0; i < n; ++i) both[i] = members[a][i] & members[b][i];
          grew |= family.insert(both).second;
        }
      }
    }
    std::vector<Hypothesis> hs;
    for (const auto& l : family) hs.push_back(Hypothesis::finite_labeling(l));
    const Hypothesis f = hs[uniform_index(rng, hs.size())];

    std::map<NodeId, std::vector<NodeId>> table;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u != v && uniform01(rng) < 0.3) table[u].push_back(v);
      }
    }
    const ImprovementMap delta_map = ImprovementMap::finite_table(table);
    const InstanceSpace space = InstanceSpace::nodes(n);

    Sample s;
    for (std::size_t i = 0; i < sample_size; ++i) {
      Point x = Point::node(uniform_index(rng, n));
      Label y = f(x);
      s.emplace_back(std::move(x), y);
    }
    Hypothesis h = closure_learn(s, ClosureOperator::finite_class(hs));
    LossSetting setting{h, f, delta_map, space};
    std::size_t imp = 0, std01 = 0;
    for (NodeId u = 0; u < n; ++u) {
      Point x = Point::node(u);
      Label li = improvement_loss(x, setting).loss_bit;
      Label ls = h(x) != f(x);
      imp += li;
      std01 += ls;
      violations[t] += li > ls;
    }
    double nd = static_cast<double>(n);
    out.rows[t] = {num(t),   num(n),   num(hs.size()), num(sample_size), num(imp / nd),
                   num(std01 / nd), num(violations[t])};
  });
  std::size_t total = 0;
  for (auto v : violations) total += v;
  out.metrics["instances"] = trials;
  out.metrics["violations"] = total;
  out.metrics["mean_improvement_loss"] = column_mean(out, 4);
  out.metrics["mean_standard_loss"] = column_mean(out, 5);
  return out;
}

ScenarioResult run_halfspace(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t d = param_count(p, "d");
  if (d < 2) throw ArgumentError("parameter 'd' must be >= 2");
  const double r = real(p, "r");
  if (!(r > 0 && r < M_PI / 2)) throw ArgumentError("parameter 'r' must lie in (0, pi/2)");
  const double delta = probability(p, "delta");
  const double C = real(p, "C");
  if (!(C > 0)) throw ArgumentError("parameter 'C' must be positive");
  std::size_t m = param_count(p, "m");
  if (m == 0) m = ceil_size(C * (static_cast<double>(d) + std::log(1 / delta)) / r);
  const std::size_t trials = param_positive_count(p, "trials");
  const std::size_t n_eval = param_positive_count(p, "eval_samples");

  ScenarioResult out;
  out.columns = {"trial", "m", "angle", "loss", "loss_stderr", "zero_loss"};
  out.rows.resize(trials);
  std::vector<double> angles(trials);
  const InstanceSpace space = InstanceSpace::sphere(d);
  const ImprovementMap delta_map = ImprovementMap::angular_ball(r);
  const auto unif = DistributionSpec::uniform_sphere(d);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    std::vector<double> w_star = sample_unit_vector(rng, d);
    Hypothesis f = Hypothesis::homogeneous_halfspace(w_star);
    Sample s;
    for (std::size_t i = 0; i < m; ++i) {
      Point x = Point::on_sphere(sample_unit_vector(rng, d));
      Label y = f(x);
      s.emplace_back(std::move(x), y);
    }
    Hypothesis h = learn_halfspace_shifted(s, r, rng());
    const auto& w = h.get_if<AffineHalfspace>()->w;
    angles[t] = std::acos(std::clamp(dot(w, w_star), -1.0, 1.0));
    LossSetting setting{h, f, delta_map, space};
    Estimate e = population_loss_mc(setting, unif, n_eval, LossKind::kImprovement, rng());
    out.rows[t] = {num(t), num(m), num(angles[t]), num(e.mean), num(e.std_error),
                   e.mean == 0.0 ? "1" : "0"};
  });
  double within = 0;
  for (double a : angles) within += a <= r / 2;
  out.metrics["m"] = m;
  out.metrics["zero_loss_fraction"] = fraction_of_ones(out, 5);
  out.metrics["mean_loss"] = column_mean(out, 3);
  out.metrics["max_angle"] = *std::max_element(angles.begin(), angles.end());
  out.metrics["angle_within_half_r_fraction"] = within / static_cast<double>(trials);
  return out;
}

ScenarioResult run_svc(const Json&, std::uint64_t, unsigned) {
  FiniteProblem problem = svc_separation_problem();
  auto labelings = svc_achievable_labelings(problem, problem.points);
  ScenarioResult out;
  out.columns = {"labeling"};
  for (const auto& l : labelings) {
    std::string s;
    for (Label v : l) s += v ? '1' : '0';
    out.rows.push_back({s});
  }
  out.metrics["points"] = problem.points.size();
  out.metrics["hypotheses"] = problem.hypotheses.size();
  out.metrics["achievable_labelings"] = labelings.size();
  out.metrics["target_labeling_achievable"] = labelings.count({1, 0, 1, 0, 1});
  out.metrics["svc_dimension"] = svc_dimension(problem);
  return out;
}

ScenarioResult run_counterexample_scenario(const std::string& id, const Json& p,
                                           std::uint64_t seed, unsigned jobs) {
  std::size_t m = 0, trials = 1;
  if (id != "thm4_6_demo") {
    m = param_count(p, "m");
    trials = param_positive_count(p, "trials");
    if (id == "ex3_1" && m == 0) {
      m = ceil_size(std::log(1 / probability(p, "delta")) / probability(p, "eps"));
    }
    if (m == 0) throw ArgumentError("parameter 'm' must be >= 1");
  }
  CounterexampleResult r = run_counterexample(id, m, trials, seed, jobs);

  ScenarioResult out;
  if (id == "ex3_1") {
    out.columns = {"trial", "improvement_loss"};
  } else if (id == "ex3_2") {
    out.columns = {"trial", "b", "improvement_loss", "standard_loss"};
  } else if (id == "ex3_6") {
    out.columns = {"trial", "improvement_loss", "strategic_loss"};
  } else if (id == "exB_1") {
    out.columns = {"trial", "improvement_loss", "standard_loss"};
  } else if (id == "thm4_6_demo") {
    out.columns = {"hypothesis", "target", "loss"};
  } else {
    throw ArgumentError("scenario '" + id + "' has no runner");
  }
  for (std::size_t t = 0; t < r.trials.size(); ++t) {
    const CounterexampleTrial& tr = r.trials[t];
    if (id == "thm4_6_demo") {
      out.rows.push_back({"h" + num(t / 2 + 1), "h" + num(*tr.target_param),
                          num(tr.improvement_loss)});
      continue;
    }
    std::vector<std::string> row = {num(t)};
    if (id == "ex3_2") row.push_back(num(*tr.target_param));
    row.push_back(num(tr.improvement_loss));
    if (id == "ex3_6") row.push_back(num(*tr.strategic_loss));
    if (id == "ex3_2" || id == "exB_1") row.push_back(num(*tr.standard_loss));
    out.rows.push_back(std::move(row));
  }
  if (id != "thm4_6_demo") {
    out.metrics["m"] = m;
    out.metrics["improvement_ci_low"] = r.improvement.ci_low();
    out.metrics["improvement_ci_high"] = r.improvement.ci_high();
    if (r.strategic) out.metrics["mean_strategic_loss"] = r.strategic->mean;
    if (r.standard) out.metrics["mean_standard_loss"] = r.standard->mean;
  }
  for (const auto& [k, v] : r.metrics) out.metrics[k] = v;
  return out;
}

}  // namespace improvelearn::detail
