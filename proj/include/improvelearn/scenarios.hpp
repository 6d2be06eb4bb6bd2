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
#include <string>
#include <vector>

#include "json.hpp"

namespace improvelearn {

using Json = nlohmann::ordered_json;

/// Registered scenario ids, in catalogue order.
std::vector<std::string> scenario_ids();

/// Catalogue entry: id, description, claim, parameters, columns, expectations.
const Json& scenario_entry(const std::string& id);

/// The whole catalogue as pretty-printed JSON with a trailing newline. This is
/// exactly what `improvelearn list --json` prints.
std::string catalogue_json();

/// Merges overrides into the scenario defaults. Unknown keys and values whose
/// type does not match the default are rejected with ArgumentError.
Json resolve_parameters(const std::string& id, const Json& overrides);

/// Converts a command-line string to the type of `like`: numbers, booleans,
/// strings, and arrays (JSON text or comma-separated).
Json coerce_value(const std::string& key, const std::string& text, const Json& like);

struct ScenarioResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json metrics = Json::object();
};

/// Runs a scenario with fully resolved parameters. Output depends only on
/// (id, params, seed), never on `jobs`.
ScenarioResult run_scenario(const std::string& id, const Json& params, std::uint64_t seed,
                            unsigned jobs = 1);

struct ExpectationCheck {
  std::string metric;
  std::string op;
  double threshold = 0.0;
  double actual = 0.0;
  bool pass = false;
};

/// Evaluates the registered expectations. Thresholds may be numbers or the
/// strings "<param>" / "1-<param>".
std::vector<ExpectationCheck> check_expectations(const std::string& id, const Json& params,
                                                 const Json& metrics);

std::string to_csv(const ScenarioResult& result);

}  // namespace improvelearn
