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

#include <cstdio>
#include <string>
#include <vector>

#include "improvelearn/scenarios.hpp"

namespace improvelearn::detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string num(std::size_t v) { return std::to_string(v); }

/// Nonnegative integer parameter (ArgumentError otherwise).
std::size_t param_count(const Json& p, const char* key);
/// Integer parameter >= 1.
std::size_t param_positive_count(const Json& p, const char* key);
/// Mean of a numeric column.
double column_mean(const ScenarioResult& r, std::size_t col);

/// Fraction of rows whose column `col` equals "1".
double fraction_of_ones(const ScenarioResult& r, std::size_t col);

using Runner = ScenarioResult (*)(const Json& params, std::uint64_t seed, unsigned jobs);

ScenarioResult run_thresholds(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_rectangles(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_intersection_closed(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_halfspace(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_svc(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_counterexample_scenario(const std::string& id, const Json& p,
                                           std::uint64_t seed, unsigned jobs);

ScenarioResult run_graph_upper(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_graph_lower(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_graph_enabling(const Json& p, std::uint64_t seed, unsigned jobs);
ScenarioResult run_teaching(const Json& p, std::uint64_t seed, unsigned jobs);

ScenarioResult run_riskaverse_sweep(const Json& p, std::uint64_t seed, unsigned jobs);

}  // namespace improvelearn::detail
