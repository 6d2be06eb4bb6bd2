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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "improvelearn/hypothesis.hpp"
#include "improvelearn/improvement_map.hpp"
#include "improvelearn/instance_space.hpp"
#include "improvelearn/loss.hpp"

namespace improvelearn {

inline constexpr std::size_t kMaxProblemPoints = 16;
inline constexpr std::size_t kMaxTuple = 12;

/// Finite strategic-classification problem for brute-force checks.
struct FiniteProblem {
  InstanceSpace space;
  std::vector<Point> points;  // at most 16
  std::vector<Hypothesis> hypotheses;
  ImprovementMap delta;

  /// Validates the size limit and that every hypothesis is total on the points.
  void validate() const;
};

/// Δ_h(x) restricted to the problem's points: {x} if h(x) = 1 or nothing
/// reachable is h-positive, else the reachable h-positive points.
std::vector<Point> materialize_reaction_set(const Point& x, const Hypothesis& h,
                                            const ImprovementMap& delta,
                                            const FiniteProblem& problem);

/// Literal max over the materialized reaction set of 1[h(x') != f*(x')].
Label brute_force_improvement_loss(const Point& x, const Hypothesis& h, const Hypothesis& f_star,
                                   const FiniteProblem& problem);

/// Post-reaction labelings (h(x'_1), ..., h(x'_n)) over all h in the problem.
std::set<std::vector<Label>> svc_achievable_labelings(const FiniteProblem& problem,
                                                      const std::vector<Point>& tuple);

/// sigma_n maximized over n-subsets of the problem's points.
std::size_t svc_shattering_coefficient(const FiniteProblem& problem, std::size_t n);

/// Largest n with sigma_n = 2^n (over the problem's points).
std::size_t svc_dimension(const FiniteProblem& problem);

/// Unions [a, b) ∪ (c, d] with a <= b <= c <= d drawn from `grid`.
std::vector<Hypothesis> two_interval_family(std::vector<double> grid);

/// Critical-endpoint grid: points, points ± r, region boundaries, and
/// midpoints of consecutive grid values, clipped to [lo, hi].
std::vector<double> critical_grid(const std::vector<double>& points, const std::vector<double>& radii,
                                  const std::vector<double>& boundaries, double lo, double hi);

/// The fixed five-point problem used for the strategic-VC separation.
FiniteProblem svc_separation_problem();

struct CounterexampleTrial {
  double improvement_loss = 0.0;
  std::optional<double> strategic_loss;
  std::optional<double> standard_loss;
  /// Per-trial random parameter of the target (e.g. the hole location b).
  std::optional<double> target_param;
};

struct CounterexampleResult {
  std::string id;
  std::size_t m = 0;
  Estimate improvement;
  std::optional<Estimate> strategic;
  std::optional<Estimate> standard;
  std::map<std::string, double> metrics;
  std::vector<CounterexampleTrial> trials;
};

const std::vector<std::string>& counterexample_ids();

/// Runs one separation construction with its own learner-under-test. m = 0
/// selects the scenario's default sample size. Outputs are demonstrations
/// for that learner, not statements about all learners.
CounterexampleResult run_counterexample(const std::string& id, std::size_t m,
                                        std::size_t n_trials, std::uint64_t seed,
                                        unsigned jobs = 1);

}  // namespace improvelearn
