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

// Command-line entry point: run scenarios, list the catalogue, teach a graph.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/graph.hpp"
#include "improvelearn/graph_model.hpp"
#include "improvelearn/scenarios.hpp"

namespace fs = std::filesystem;
using improvelearn::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitExpectationFail = 2;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw improvelearn::Error("cannot write " + path.string());
  out << text;
  if (!out) throw improvelearn::Error("failed writing " + path.string());
}

// Flat `--key value` / `--key=value` overrides left over after CLI11 parsing.
Json parse_overrides(const std::string& id, const std::vector<std::string>& extras) {
  const Json& defaults = improvelearn::scenario_entry(id).at("parameters");
  Json out = Json::object();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::string arg = extras[i];
    if (arg.rfind("--", 0) != 0 || arg.size() == 2) {
      throw improvelearn::ArgumentError("unexpected argument '" + arg + "'");
    }
    std::string key = arg.substr(2), value;
    if (auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw improvelearn::ArgumentError("missing value for --" + key);
      value = extras[++i];
    }
    for (char& c : key) c = c == '-' ? '_' : c;
    if (!defaults.contains(key)) {
      // Let resolve_parameters produce the diagnostic listing the known keys.
      improvelearn::resolve_parameters(id, Json{{key, value}});
    }
    out[key] = improvelearn::coerce_value(key, value, defaults.at(key));
  }
  return out;
}

struct RunOptions {
  std::string scenario;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_dir;
  std::string config;
  bool json = false;
};

int cmd_run(const RunOptions& opt, const std::vector<std::string>& extras, bool seed_given) {
  const auto t0 = std::chrono::steady_clock::now();
  improvelearn::scenario_entry(opt.scenario);
  Json overrides = Json::object();
  std::uint64_t seed = opt.seed;
  if (!opt.config.empty()) {
    Json cfg = Json::parse(improvelearn::read_file(opt.config), nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) {
      throw improvelearn::ParseError("config " + opt.config + " is not a JSON object");
    }
    if (cfg.contains("seed")) {
      if (!cfg["seed"].is_number_unsigned()) throw improvelearn::ArgumentError("config seed must be a nonnegative integer");
      if (!seed_given) seed = cfg["seed"].get<std::uint64_t>();
      cfg.erase("seed");
    }
    overrides = cfg;
  }
  Json flags = parse_overrides(opt.scenario, extras);
  for (auto it = flags.begin(); it != flags.end(); ++it) overrides[it.key()] = it.value();
  Json params = improvelearn::resolve_parameters(opt.scenario, overrides);

  improvelearn::ScenarioResult result = improvelearn::run_scenario(opt.scenario, params, seed, opt.jobs);
  auto checks = improvelearn::check_expectations(opt.scenario, params, result.metrics);
  bool pass = true;
  Json exp = Json::array();
  for (const auto& c : checks) {
    pass = pass && c.pass;
    exp.push_back({{"metric", c.metric}, {"op", c.op}, {"threshold", c.threshold},
                   {"actual", c.actual}, {"pass", c.pass}});
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json summary = {{"scenario", opt.scenario}, {"seed", seed},  {"pass", pass},
                  {"rows", result.rows.size()}, {"metrics", result.metrics},
                  {"expectations", exp},      {"elapsed_seconds", elapsed}};
  Json manifest = {{"tool", "improvelearn"},
                   {"version", IMPROVELEARN_VERSION},
                   {"command", "run"},
                   {"scenario", opt.scenario},
                   {"seed", seed},
                   {"jobs", opt.jobs},
                   {"config_file", opt.config.empty() ? Json(nullptr) : Json(opt.config)},
                   {"parameters", params},
                   {"outputs", {"results.csv", "summary.json", "manifest.json"}}};

  fs::path out = opt.out_dir.empty() ? fs::path("results") / opt.scenario : fs::path(opt.out_dir);
  fs::create_directories(out);
  write_file(out / "results.csv", improvelearn::to_csv(result));
  write_file(out / "summary.json", summary.dump(2) + "\n");
  write_file(out / "manifest.json", manifest.dump(2) + "\n");

  if (opt.json) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::cout << opt.scenario << ": " << (pass ? "PASS" : "FAIL") << " (" << result.rows.size()
              << " rows, " << out.string() << ")\n";
    for (const auto& c : checks) {
      std::cout << "  " << c.metric << " = " << c.actual << "  [" << c.op << " " << c.threshold
                << "] " << (c.pass ? "ok" : "FAILED") << "\n";
    }
  }
  return pass ? kExitPass : kExitExpectationFail;
}

int cmd_list(bool json) {
  if (json) {
    std::cout << improvelearn::catalogue_json();
    return kExitPass;
  }
  for (const auto& id : improvelearn::scenario_ids()) {
    const Json& e = improvelearn::scenario_entry(id);
    std::cout << id << "\n  " << e.at("claim").get<std::string>() << "\n  defaults: "
              << e.at("parameters").dump() << "\n";
  }
  return kExitPass;
}

int cmd_teach(const std::string& graph_file, const std::string& labels_file, bool json) {
  improvelearn::Graph g = improvelearn::Graph::parse_edge_list(improvelearn::read_file(graph_file));
  auto labels = improvelearn::parse_labeling(improvelearn::read_file(labels_file), g.n());
  improvelearn::GraphInstance inst(std::move(g), std::move(labels));
  std::vector<improvelearn::NodeId> set;
  bool verified = true;
  std::string why;
  try {
    set = improvelearn::teach_risk_averse_student(inst).teaching_set;
  } catch (const improvelearn::InvariantViolation& e) {
    verified = false;
    why = e.what();
  }
  if (json) {
    Json j = {{"teaching_set", set}, {"verified", verified}};
    if (!verified) j["reason"] = why;
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < set.size(); ++i) std::cout << (i ? " " : "") << set[i];
    std::cout << "\n"
              << (verified ? "verified: student improvement loss is 0" : "NOT verified: " + why)
              << "\n";
  }
  return verified ? kExitPass : kExitExpectationFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification toolkit for learning with agent improvements"};
  app.name("improvelearn");
  app.set_version_flag("--version", IMPROVELEARN_VERSION);
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run a registered scenario and write results.csv, summary.json, manifest.json");
  run->add_option("scenario", run_opt.scenario, "Scenario id (see `list`)")->required();
  auto* seed_opt = run->add_option("--seed", run_opt.seed, "Root seed");
  run->add_option("--jobs", run_opt.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  run->add_option("--out", run_opt.out_dir, "Output directory (default results/<scenario>)");
  run->add_option("--config", run_opt.config, "JSON object of parameter overrides");
  run->add_flag("--json", run_opt.json, "Print summary.json to stdout");
  run->allow_extras();
  run->footer("Scenario parameters are given as --key value; unknown keys are rejected.");

  bool list_json = false;
  auto* list = app.add_subcommand("list", "Print the scenario catalogue");
  list->add_flag("--json", list_json, "Machine-readable catalogue");

  std::string graph_file, labels_file;
  bool teach_json = false;
  auto* teach = app.add_subcommand("teach", "Compute and verify a teaching set for a labeled graph");
  teach->add_option("graph", graph_file, "Edge-list file: 'n m' then m lines 'u v'")->required();
  teach->add_option("labels", labels_file, "One line of n labels in {0,1}")->required();
  teach->add_flag("--json", teach_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "improvelearn: error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*run) return cmd_run(run_opt, run->remaining(), seed_opt->count() > 0);
    if (*list) return cmd_list(list_json);
    if (*teach) return cmd_teach(graph_file, labels_file, teach_json);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg) c = c == '\n' ? ' ' : c;
    std::cerr << "improvelearn: error: " << msg << "\n";
    return kExitError;
  }
  return kExitError;
}
