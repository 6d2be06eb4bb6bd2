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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "improvelearn/graph.hpp"
#include "improvelearn/scenarios.hpp"

namespace fs = std::filesystem;
using improvelearn::Json;

namespace {

struct Run {
  Json metrics;
  Json params;
  double seconds = 0;
};

Run run(const std::string& id, const Json& overrides = Json::object(), std::uint64_t seed = 0) {
  Run r;
  r.params = improvelearn::resolve_parameters(id, overrides);
  auto t0 = std::chrono::steady_clock::now();
  r.metrics = improvelearn::run_scenario(id, r.params, seed, 1).metrics;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double m(const Run& r, const char* key) { return r.metrics.at(key).get<double>(); }

int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
  failures += !pass;
  std::cout << (pass ? "PASS" : "FAIL") << "  #" << n << " " << name << ": " << detail << std::endl;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string cli_results(const std::string& id, unsigned jobs, const fs::path& dir) {
  fs::path out = dir / (id + "_j" + std::to_string(jobs));
  std::string cmd = std::string(IMPROVELEARN_CLI_PATH) + " run " + id + " --seed 5 --jobs " +
                    std::to_string(jobs) + " --out " + out.string() + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) > 2) return "<error>";
  return improvelearn::read_file((out / "results.csv").string());
}

}  // namespace

int main() {
  {
    Run r = run("thresholds_thm4_1", Json{{"eps", 0.05}, {"r", 0.05}, {"delta", 0.05}, {"trials", 1000}});
    bool ok = m(r, "m") == 60 && m(r, "zero_loss_fraction") >= 0.95 && r.seconds < 5;
    report(1, "thresholds zero-error", ok,
           fmt("m=%g zero_loss_fraction=%.4f (>= 0.95), %.2fs (< 5s)", m(r, "m"),
               m(r, "zero_loss_fraction"), r.seconds));
  }
  {
    Run r = run("thresholds_thm4_1", Json{{"eps", 0.05}, {"r", 0.02}, {"delta", 0.05}, {"trials", 1000}});
    bool ok = m(r, "m") == 60 && std::abs(m(r, "bound") - 0.03) < 1e-12 &&
              m(r, "within_bound_fraction") >= 0.95;
    report(2, "thresholds error bound", ok,
           fmt("m=%g fraction with loss <= %.3f: %.4f (>= 0.95)", m(r, "m"), m(r, "bound"),
               m(r, "within_bound_fraction")));
  }
  {
    Run r = run("rectangles_thm4_2", Json{{"trials", 500}});
    bool ok = m(r, "m") == 100 && m(r, "fp_violations") == 0 && m(r, "ir_match_fraction") >= 0.99;
    report(3, "rectangles closure", ok,
           fmt("m=%g fp_violations=%g (== 0), ir_match_fraction=%.4f (>= 0.99)", m(r, "m"),
               m(r, "fp_violations"), m(r, "ir_match_fraction")));
  }
  {
    Run r = run("intersection_closed_thm4_5", Json{{"trials", 10000}, {"max_points", 10}});
    report(4, "intersection-closed reduction", m(r, "violations") == 0,
           fmt("violations=%g over 10000 instances (== 0)", m(r, "violations")));
  }
  {
    Run r = run("halfspace_thm4_8", Json{{"d", 3}, {"r", 0.3}, {"delta", 0.1}, {"C", 20}, {"trials", 200},
                                         {"eval_samples", 10000}});
    bool ok = m(r, "zero_loss_fraction") >= 0.9 && r.seconds < 60;
    report(5, "halfspaces", ok,
           fmt("m=%g zero_loss_fraction=%.4f (>= 0.9), %.2fs (< 60s)", m(r, "m"),
               m(r, "zero_loss_fraction"), r.seconds));
  }
  {
    Run r = run("graph_upper_thm5_1", Json{{"n", 100}, {"k", 20}, {"delta", 0.05}, {"c", 1.0}, {"trials", 1000}});
    report(6, "graph upper bound", m(r, "zero_loss_fraction") >= 0.95,
           fmt("m=%g zero_loss_fraction=%.4f (>= 0.95)", m(r, "m"), m(r, "zero_loss_fraction")));
  }
  {
    Run r = run("graph_lower_cliques", Json{{"n", 100}, {"k", 20}, {"trials", 2000}});
    double f = m(r, "coverage_failure_fraction");
    report(7, "graph lower bound", m(r, "m") == 60 && f >= 0.5 && f <= 0.75,
           fmt("m=%g coverage_failure_fraction=%.4f (in [0.50, 0.75])", m(r, "m"), f));
  }
  {
    Run r = run("teaching_thm5_3", Json{{"trials", 500}, {"max_nodes", 50}});
    report(8, "teaching", m(r, "verified_fraction") == 1.0,
           fmt("verified_fraction=%.4f (== 1)", m(r, "verified_fraction")));
  }
  {
    Run r = run("graph_enabling_thmC1", Json{{"delta", 0.05}, {"c", 1.0}, {"trials", 500}});
    report(9, "enabling loss", m(r, "joint_zero_fraction") >= 0.95,
           fmt("m=%g joint_zero_fraction=%.4f (>= 0.95)", m(r, "m"), m(r, "joint_zero_fraction")));
  }
  {
    Run r = run("svc_thm3_5");
    report(10, "strategic VC separation", m(r, "target_labeling_achievable") == 0,
           fmt("labeling 10101 achievable=%g (== 0), %g achievable labelings",
               m(r, "target_labeling_achievable"), m(r, "achievable_labelings")));
  }
  {
    Run a = run("ex3_2", Json{{"m", 200}, {"trials", 1000}});
    Run b = run("ex3_6", Json{{"trials", 1000}});
    bool ok = m(a, "mean_improvement_loss") >= 0.20 && m(b, "mean_improvement_loss") <= 0.02 &&
              m(b, "min_strategic_grid") >= 0.48;
    report(11, "counterexample floors", ok,
           fmt("ex3_2 mean loss=%.4f (>= 0.20); ex3_6 improvement loss=%.4f (<= 0.02), "
               "min strategic=%.4f (>= 0.48)",
               m(a, "mean_improvement_loss"), m(b, "mean_improvement_loss"), m(b, "min_strategic_grid")));
  }
  {
    Run r = run("riskaverse_sweep");
    bool ok = r.params.at("dataset_seeds").size() == 5 && m(r, "wbce_err_after_max_r") <= 0.02 &&
              m(r, "wbce_le_bce_fraction") >= 0.8 && m(r, "monotone_violations") == 0 &&
              m(r, "grad_check_max_rel_err") <= 1e-4 && r.seconds < 180;
    report(12, "risk-averse trends", ok,
           fmt("(a) wbce err=%.4f (<= 0.02) (b) wbce<=bce in %.0f/5 seeds (>= 4) "
               "(c) monotone violations=%g (== 0) (d) grad rel err=%.2e (<= 1e-4), %.1fs (< 180s)",
               m(r, "wbce_err_after_max_r"), 5 * m(r, "wbce_le_bce_fraction"),
               m(r, "monotone_violations"), m(r, "grad_check_max_rel_err"), r.seconds));
  }
  {
    fs::path dir = fs::temp_directory_path() / ("improvelearn_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string bad;
    for (const auto& id : improvelearn::scenario_ids()) {
      std::string a = cli_results(id, 1, dir), b = cli_results(id, 8, dir);
      std::string a2 = cli_results(id, 1, dir);
      if (a == "<error>" || a != b || a != a2) bad += (bad.empty() ? "" : ", ") + id;
    }
    fs::remove_all(dir);
    const auto n = improvelearn::scenario_ids().size();
    report(13, "determinism", bad.empty(),
           bad.empty() ? fmt("%zu scenarios byte-identical across reruns and --jobs 1 vs 8", n)
                       : "differs: " + bad);
  }
  std::cout << (failures == 0 ? "ALL 13 CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
            << std::endl;
  return failures;
}
