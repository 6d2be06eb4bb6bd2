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

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "improvelearn/graph.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/improvement_map.hpp"
#include "improvelearn/instance_space.hpp"

namespace improvelearn {

struct EvalOptions {
  /// Allow a deterministic grid search over box-shaped Δ(x) when no exact
  /// evaluator exists. Approximate: it can miss thin regions.
  bool grid_fallback = false;
  /// Grid points per moving dimension.
  std::size_t grid_resolution = 512;
};

/// "h labels the point `label`".
struct Requirement {
  const Hypothesis* h;
  Label label;
};

/// Some y in Δ(x) satisfying every requirement, or nullopt if none exists.
/// Exact for interval, box, spherical-cap and finite Δ(x) with hypotheses of
/// matching geometry; throws EvaluationUnsupported otherwise (unless the grid
/// fallback applies).
std::optional<Point> find_reachable(const Point& x, const ImprovementMap& delta,
                                    const InstanceSpace& space,
                                    std::initializer_list<Requirement> reqs,
                                    const EvalOptions& opts = {});

/// y ∈ Δ(x), tested directly from the geometric definition.
bool delta_contains(const ImprovementMap& delta, const InstanceSpace& space, const Point& x,
                    const Point& y);

/// Explicit Δ(x) on a finite instance space.
std::vector<NodeId> enumerate_delta(const Point& x, const ImprovementMap& delta,
                                    const InstanceSpace& space);

}  // namespace improvelearn
