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

#include <cmath>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/graph_model.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/parallel.hpp"
#include "improvelearn/rng.hpp"
#include "scenario_impl.hpp"

namespace improvelearn::detail {

namespace {

double exact_loss(const GraphInstance& inst, const Hypothesis& h, LossKind kind) {
  Hypothesis f = inst.target();
  ImprovementMap delta = inst.delta();
  InstanceSpace space = InstanceSpace::nodes(inst.n());
  LossSetting s{h, f, delta, space};
  return population_loss_exact(s, DistributionSpec::uniform_nodes(inst.n()), kind);
}

}  // namespace

ScenarioResult run_graph_upper(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t n = param_positive_count(p, "n");
  const std::size_t k = param_positive_count(p, "k");
  const double delta = p.at("delta").get<double>();
  const double c = p.at("c").get<double>();
  const std::size_t trials = param_positive_count(p, "trials");
  GraphInstance inst(make_clique_lower_bound(n, k), std::vector<Label>(n, 1));
  CoverageStats st = coverage_stats(inst);
  std::size_t m = param_count(p, "m");
  if (m == 0) m = zero_error_sample_size(n, st.d_min_plus, delta, c);

  ScenarioResult out;
  out.columns = {"trial", "m", "covered", "loss"};
  out.rows.resize(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    std::vector<NodeId> sample = sample_nodes(rng, n, m);
    double loss = exact_loss(inst, learn_graph_conservative(inst, sample), LossKind::kImprovement);
    out.rows[t] = {num(t), num(m), all_positives_covered(inst, sample) ? "1" : "0", num(loss)};
  });
  double zero = 0;
  for (const auto& row : out.rows) zero += row[3] == "0";
  out.metrics["m"] = m;
  out.metrics["d_min_plus"] = st.d_min_plus;
  out.metrics["zero_loss_fraction"] = zero / static_cast<double>(trials);
  out.metrics["coverage_fraction"] = fraction_of_ones(out, 2);
  out.metrics["mean_loss"] = column_mean(out, 3);
  return out;
}

ScenarioResult run_graph_lower(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t n = param_positive_count(p, "n");
  const std::size_t k = param_positive_count(p, "k");
  const std::size_t trials = param_positive_count(p, "trials");
  GraphInstance inst(make_clique_lower_bound(n, k), std::vector<Label>(n, 1));
  std::size_t m = param_count(p, "m");
  if (m == 0) m = static_cast<std::size_t>(std::ceil(k * std::log(static_cast<double>(k))));

  ScenarioResult out;
  out.columns = {"trial", "m", "covered"};
  out.rows.resize(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    bool covered = all_positives_covered(inst, sample_nodes(rng, n, m));
    out.rows[t] = {num(t), num(m), covered ? "1" : "0"};
  });
  out.metrics["m"] = m;
  out.metrics["coverage_failure_fraction"] = 1.0 - fraction_of_ones(out, 2);
  out.metrics["asymptotic_failure"] = 1.0 - std::exp(-1.0);
  return out;
}

ScenarioResult run_graph_enabling(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t n = param_positive_count(p, "n");
  const std::size_t k = param_positive_count(p, "k");
  const double delta = p.at("delta").get<double>();
  const double c = p.at("c").get<double>();
  const std::size_t trials = param_positive_count(p, "trials");
  const bool cliques = p.at("clique_groups").get<bool>();
  GraphInstance inst = make_star_partition_lower_bound(n, k, cliques);
  CoverageStats st = coverage_stats(inst);
  std::size_t m = param_count(p, "m");
  if (m == 0) m = enabling_sample_size(n, st.d_min_N, delta, c);

  ScenarioResult out;
  out.columns = {"trial", "m", "loss", "enabling_loss", "joint_zero"};
  out.rows.resize(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    Hypothesis h = learn_graph_conservative(inst, sample_nodes(rng, n, m));
    double loss = exact_loss(inst, h, LossKind::kImprovement);
    double e = exact_loss(inst, h, LossKind::kEnabling);
    out.rows[t] = {num(t), num(m), num(loss), num(e), loss == 0 && e == 0 ? "1" : "0"};
  });
  out.metrics["m"] = m;
  out.metrics["d_min_plus"] = st.d_min_plus;
  out.metrics["d_min_N"] = st.d_min_N == CoverageStats::kInfinite ? -1.0 : static_cast<double>(st.d_min_N);
  out.metrics["joint_zero_fraction"] = fraction_of_ones(out, 4);
  out.metrics["mean_loss"] = column_mean(out, 2);
  out.metrics["mean_enabling_loss"] = column_mean(out, 3);
  return out;
}

ScenarioResult run_teaching(const Json& p, std::uint64_t seed, unsigned jobs) {
  const std::size_t trials = param_positive_count(p, "trials");
  const std::size_t max_nodes = param_positive_count(p, "max_nodes");
  if (max_nodes > 2000) throw ArgumentError("parameter 'max_nodes' must be <= 2000");

  ScenarioResult out;
  out.columns = {"trial", "n", "edges", "n_plus", "teaching_size", "verified"};
  out.rows.resize(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng = make_stream(seed, t);
    const std::size_t n = 1 + uniform_index(rng, max_nodes);
    const double density = uniform(rng, 0.0, 0.5);
    const double pos_rate = uniform01(rng);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (uniform01(rng) < density) edges.emplace_back(u, v);
      }
    }
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform01(rng) < pos_rate;
    const std::size_t n_edges = edges.size();
    GraphInstance inst(Graph(n, std::move(edges)), labels);
    std::string size = "-";
    bool verified = true;
    try {
      size = num(teach_risk_averse_student(inst).teaching_set.size());
    } catch (const InvariantViolation&) {
      verified = false;
    }
    out.rows[t] = {num(t), num(n), num(n_edges), num(inst.positives().size()), size,
                   verified ? "1" : "0"};
  });
  double sizes = 0, ok = 0;
  for (const auto& row : out.rows) {
    if (row[5] == "1") {
      sizes += std::stod(row[4]);
      ++ok;
    }
  }
  out.metrics["verified_fraction"] = fraction_of_ones(out, 5);
  out.metrics["mean_teaching_size"] = ok > 0 ? sizes / ok : 0.0;
  return out;
}

}  // namespace improvelearn::detail
