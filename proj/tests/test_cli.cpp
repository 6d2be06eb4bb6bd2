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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "improvelearn/graph.hpp"
#include "improvelearn/scenarios.hpp"

namespace fs = std::filesystem;
using improvelearn::Json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("improvelearn_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Outcome cli(const std::string& args) {
  fs::path err_file = scratch() / "stderr.txt";
  std::string cmd = std::string(IMPROVELEARN_CLI_PATH) + " " + args + " 2>" + err_file.string();
  Outcome o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.err = improvelearn::read_file(err_file.string());
  return o;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, ListJsonIsTheCatalogue) {
  Outcome o = cli("list --json");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, improvelearn::catalogue_json());
  Outcome text = cli("list");
  EXPECT_EQ(text.code, 0);
  for (const auto& id : improvelearn::scenario_ids()) EXPECT_NE(text.out.find(id), std::string::npos);
}

TEST(Cli, ErrorsExitOneWithSingleLine) {
  for (const std::string args : {"run no_such_scenario", "run ex3_2 --bogus 3", "run ex3_2 --m abc",
                                 "run ex3_2 --jobs 0", "frobnicate"}) {
    Outcome o = cli(args);
    EXPECT_EQ(o.code, 1) << args;
    EXPECT_EQ(o.err.rfind("improvelearn: error: ", 0), 0u) << args << ": " << o.err;
    EXPECT_EQ(std::count(o.err.begin(), o.err.end(), '\n'), 1) << args;
  }
}

TEST(Cli, RunWritesArtifacts) {
  fs::path out = scratch() / "ex3_2";
  Outcome o = cli("run ex3_2 --trials 100 --seed 3 --out " + out.string());
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  ASSERT_TRUE(fs::exists(out / "results.csv"));
  Json summary = Json::parse(improvelearn::read_file((out / "summary.json").string()));
  EXPECT_EQ(summary.at("pass"), true);
  EXPECT_EQ(summary.at("seed"), 3);
  EXPECT_EQ(summary.at("rows"), 100);
  Json manifest = Json::parse(improvelearn::read_file((out / "manifest.json").string()));
  EXPECT_EQ(manifest.at("parameters").at("trials"), 100);
  EXPECT_EQ(manifest.at("scenario"), "ex3_2");
}

TEST(Cli, FailedExpectationExitsTwo) {
  fs::path out = scratch() / "lower";
  Outcome o = cli("run graph_lower_cliques --m 1000 --trials 50 --out " + out.string());
  EXPECT_EQ(o.code, 2) << o.out << o.err;
  EXPECT_NE(o.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  fs::path cfg = scratch() / "cfg.json";
  write(cfg, R"({"seed": 11, "trials": 40, "m": 50})");
  fs::path out = scratch() / "cfg_run";
  Outcome o = cli("run ex3_2 --config " + cfg.string() + " --m 60 --out " + out.string() + " --json");
  EXPECT_EQ(o.code, 0) << o.err;
  Json summary = Json::parse(o.out);
  EXPECT_EQ(summary.at("seed"), 11);
  EXPECT_EQ(summary.at("rows"), 40);
  Json manifest = Json::parse(improvelearn::read_file((out / "manifest.json").string()));
  EXPECT_EQ(manifest.at("parameters").at("m"), 60);
  Outcome o2 = cli("run ex3_2 --config " + cfg.string() + " --seed 12 --out " + out.string() + " --json");
  EXPECT_EQ(Json::parse(o2.out).at("seed"), 12);
}

TEST(Cli, ThresholdExampleCommandPasses) {
  fs::path out = scratch() / "thr";
  Outcome o = cli("run thresholds_thm4_1 --eps 0.05 --delta 0.05 --r 0.05 --trials 1000 --seed 7 --out " +
                  out.string());
  EXPECT_EQ(o.code, 0) << o.out;
  Json summary = Json::parse(improvelearn::read_file((out / "summary.json").string()));
  EXPECT_GE(summary.at("metrics").at("zero_loss_fraction").get<double>(), 0.95);
}

TEST(Cli, JobsDoNotChangeResults) {
  for (const std::string id : {"thresholds_thm4_1", "graph_upper_thm5_1", "teaching_thm5_3", "ex3_6"}) {
    fs::path a = scratch() / (id + "_j1"), b = scratch() / (id + "_j8");
    ASSERT_LE(cli("run " + id + " --jobs 1 --trials 200 --out " + a.string()).code, 2);
    ASSERT_LE(cli("run " + id + " --jobs 8 --trials 200 --out " + b.string()).code, 2);
    EXPECT_EQ(improvelearn::read_file((a / "results.csv").string()),
              improvelearn::read_file((b / "results.csv").string()))
        << id;
  }
}

TEST(Cli, Teach) {
  fs::path g = scratch() / "p3.txt", pos = scratch() / "pos.txt", neg = scratch() / "neg.txt";
  write(g, "3 2\n0 1\n1 2\n");
  write(pos, "1 1 1\n");
  write(neg, "0 0 0\n");
  Outcome o = cli("teach " + g.string() + " " + pos.string());
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "1\nverified: student improvement loss is 0\n");
  Outcome e = cli("teach " + g.string() + " " + neg.string());
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.out.substr(0, 1), "\n");

  fs::path two = scratch() / "two.txt", lab = scratch() / "two_labels.txt";
  write(two, "6 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n");
  write(lab, "1 1 1 1 1 1\n");
  Outcome t = cli("teach " + two.string() + " " + lab.string() + " --json");
  EXPECT_EQ(t.code, 0);
  Json j = Json::parse(t.out);
  EXPECT_EQ(j.at("teaching_set").size(), 2u);
  EXPECT_EQ(j.at("verified"), true);

  write(lab, "1 1\n");
  EXPECT_EQ(cli("teach " + two.string() + " " + lab.string()).code, 1);
}
