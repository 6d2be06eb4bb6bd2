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

#include "improvelearn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "improvelearn/errors.hpp"
#include "scenario_impl.hpp"

namespace improvelearn {

namespace detail {
extern const char* const kRegistryJson;

double fraction_of_ones(const ScenarioResult& r, std::size_t col) {
  if (r.rows.empty()) return 0.0;
  double k = 0;
  for (const auto& row : r.rows) k += row.at(col) == "1";
  return k / static_cast<double>(r.rows.size());
}

std::size_t param_count(const Json& p, const char* key) {
  double v = p.at(key).get<double>();
  if (!(v >= 0) || v != std::floor(v) || v > 1e12) {
    throw ArgumentError(std::string("parameter '") + key + "' must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::size_t param_positive_count(const Json& p, const char* key) {
  std::size_t v = param_count(p, key);
  if (v == 0) throw ArgumentError(std::string("parameter '") + key + "' must be >= 1");
  return v;
}

double column_mean(const ScenarioResult& r, std::size_t col) {
  if (r.rows.empty()) return 0.0;
  double s = 0;
  for (const auto& row : r.rows) s += std::stod(row.at(col));
  return s / static_cast<double>(r.rows.size());
}

}  // namespace detail

namespace {

const Json& registry() {
  static const Json reg = Json::parse(detail::kRegistryJson);
  return reg;
}

}  // namespace

std::vector<std::string> scenario_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry().at("scenarios")) ids.push_back(e.at("id").get<std::string>());
  return ids;
}

const Json& scenario_entry(const std::string& id) {
  for (const auto& e : registry().at("scenarios")) {
    if (e.at("id") == id) return e;
  }
  throw ArgumentError("unknown scenario '" + id + "' (see `improvelearn list`)");
}

std::string catalogue_json() { return registry().dump(2) + "\n"; }

namespace {

bool same_kind(const Json& like, const Json& v) {
  if (like.is_number()) return v.is_number();
  if (like.is_boolean()) return v.is_boolean();
  if (like.is_string()) return v.is_string();
  if (like.is_array()) {
    if (!v.is_array()) return false;
    if (like.empty()) return std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); });
    return std::all_of(v.begin(), v.end(), [&](const Json& e) { return same_kind(like.front(), e); });
  }
  return false;
}

std::string kind_name(const Json& like) {
  if (like.is_number()) return "a number";
  if (like.is_boolean()) return "a boolean";
  if (like.is_string()) return "a string";
  if (like.is_array()) {
    if (like.empty() || like.front().is_number()) return "a list of numbers";
    return "a list of strings";
  }
  return "a value";
}

}  // namespace

Json resolve_parameters(const std::string& id, const Json& overrides) {
  const Json& defaults = scenario_entry(id).at("parameters");
  Json out = defaults;
  if (overrides.is_null()) return out;
  if (!overrides.is_object()) throw ArgumentError("parameter overrides must be a JSON object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    if (!defaults.contains(it.key())) {
      std::string known;
      for (auto d = defaults.begin(); d != defaults.end(); ++d) known += (known.empty() ? "" : ", ") + d.key();
      throw ArgumentError("unknown parameter '" + it.key() + "' for scenario " + id +
                          (known.empty() ? " (it takes no parameters)" : " (known: " + known + ")"));
    }
    const Json& like = defaults.at(it.key());
    if (!same_kind(like, it.value())) {
      throw ArgumentError("parameter '" + it.key() + "' must be " + kind_name(like));
    }
    out[it.key()] = it.value();
  }
  return out;
}

Json coerce_value(const std::string& key, const std::string& text, const Json& like) {
  auto fail = [&] {
    return ArgumentError("parameter '" + key + "' must be " + kind_name(like) + ", got '" + text + "'");
  };
  if (like.is_string()) return text;
  if (like.is_boolean()) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw fail();
  }
  Json v;
  if (like.is_array() && !text.empty() && text.front() != '[') {
    v = Json::array();
    std::stringstream ss(text);
    std::string item;
    bool strings = !like.empty() && like.front().is_string();
    while (std::getline(ss, item, ',')) {
      if (strings) {
        v.push_back(item);
      } else {
        v.push_back(Json::parse(item, nullptr, false));
        if (v.back().is_discarded()) throw fail();
      }
    }
  } else {
    v = Json::parse(text, nullptr, false);
    if (v.is_discarded()) throw fail();
  }
  if (!same_kind(like, v)) throw fail();
  return v;
}

ScenarioResult run_scenario(const std::string& id, const Json& params, std::uint64_t seed,
                            unsigned jobs) {
  using namespace detail;
  static const std::map<std::string, Runner> runners = {
      {"thresholds_thm4_1", run_thresholds},
      {"rectangles_thm4_2", run_rectangles},
      {"intersection_closed_thm4_5", run_intersection_closed},
      {"halfspace_thm4_8", run_halfspace},
      {"graph_upper_thm5_1", run_graph_upper},
      {"graph_lower_cliques", run_graph_lower},
      {"graph_enabling_thmC1", run_graph_enabling},
      {"teaching_thm5_3", run_teaching},
      {"svc_thm3_5", run_svc},
      {"riskaverse_sweep", run_riskaverse_sweep},
  };
  const Json& entry = scenario_entry(id);
  Json resolved = resolve_parameters(id, params);
  ScenarioResult r;
  if (auto it = runners.find(id); it != runners.end()) {
    r = it->second(resolved, seed, jobs);
  } else {
    r = run_counterexample_scenario(id, resolved, seed, jobs);
  }
  if (Json(r.columns) != entry.at("columns")) {
    throw InvariantViolation("scenario " + id + " produced columns that differ from the registry");
  }
  return r;
}

namespace {

double resolve_threshold(const Json& value, const Json& params) {
  if (value.is_number()) return value.get<double>();
  std::string s = value.get<std::string>();
  double sign = 1, offset = 0;
  if (s.rfind("1-", 0) == 0) {
    offset = 1;
    sign = -1;
    s = s.substr(2);
  }
  if (!params.contains(s) || !params.at(s).is_number()) {
    throw ArgumentError("expectation refers to unknown numeric parameter '" + s + "'");
  }
  return offset + sign * params.at(s).get<double>();
}

}  // namespace

std::vector<ExpectationCheck> check_expectations(const std::string& id, const Json& params,
                                                 const Json& metrics) {
  std::vector<ExpectationCheck> out;
  for (const auto& e : scenario_entry(id).at("expectations")) {
    ExpectationCheck c;
    c.metric = e.at("metric").get<std::string>();
    c.op = e.at("op").get<std::string>();
    c.threshold = resolve_threshold(e.at("value"), params);
    if (!metrics.contains(c.metric)) {
      throw InvariantViolation("scenario " + id + " did not report metric " + c.metric);
    }
    c.actual = metrics.at(c.metric).get<double>();
    if (c.op == ">=") {
      c.pass = c.actual >= c.threshold;
    } else if (c.op == "<=") {
      c.pass = c.actual <= c.threshold;
    } else if (c.op == "==") {
      c.pass = c.actual == c.threshold;
    } else {
      throw InvariantViolation("unknown expectation operator '" + c.op + "'");
    }
    out.push_back(c);
  }
  return out;
}

std::string to_csv(const ScenarioResult& result) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += fields[i];
    }
    out += '\n';
  };
  line(result.columns);
  for (const auto& row : result.rows) line(row);
  return out;
}

}  // namespace improvelearn
