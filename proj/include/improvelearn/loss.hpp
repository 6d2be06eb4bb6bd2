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
#include <optional>
#include <string>

#include "improvelearn/distribution.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/improvement_map.hpp"
#include "improvelearn/instance_space.hpp"
#include "improvelearn/reaction.hpp"

namespace improvelearn {

enum class LossKind { kImprovement, kStrategic, kEnabling };

LossKind parse_loss_kind(const std::string& name);
std::string to_string(LossKind kind);

struct ReactionOutcome {
  bool moved = false;
  Label loss_bit = 0;
  /// Reachable h-positive, f*-negative point; only set when moved and loss_bit = 1.
  std::optional<Point> witness;
};

/// Everything that stays fixed while a loss is evaluated at many points.
struct LossSetting {
  const Hypothesis& h;
  const Hypothesis& f_star;
  const ImprovementMap& delta;
  const InstanceSpace& space;
  EvalOptions opts = {};
};

/// Adversarial improvement loss: 1 iff some point of Δ_h(x) is misclassified.
ReactionOutcome improvement_loss(const Point& x, const LossSetting& s);

/// Post-movement prediction compared with the original label f*(x).
Label strategic_loss(const Point& x, const LossSetting& s);

/// 1 iff f*(x) = 0 and h disagrees with f* about whether x can move.
/// Only defined on finite instance spaces.
Label enabling_loss(const Point& x, const LossSetting& s);

Label pointwise_loss(LossKind kind, const Point& x, const LossSetting& s);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;

  double ci_low() const { return mean - 1.96 * std_error; }
  double ci_high() const { return mean + 1.96 * std_error; }
};

/// Mean and standard error of a list of 0/1 or real outcomes.
Estimate estimate_from(const std::vector<double>& values);

Estimate population_loss_mc(const LossSetting& s, const DistributionSpec& dist,
                            std::size_t n_samples, LossKind kind, std::uint64_t seed);

/// Exact expectation over a finitely supported distribution.
double population_loss_exact(const LossSetting& s, const DistributionSpec& dist, LossKind kind);

/// Exact loss under the uniform distribution on a line space. The loss is
/// piecewise constant between the breakpoints generated by hypothesis
/// endpoints, region boundaries and their shifts by every ball radius, so
/// evaluating one interior point per cell is exact.
double population_loss_uniform_line(const LossSetting& s, LossKind kind);

/// Uniform-sphere mass of the disagreement region of two homogeneous halfspaces.
double halfspace_disagreement_mass(const std::vector<double>& w1, const std::vector<double>& w2);

}  // namespace improvelearn
