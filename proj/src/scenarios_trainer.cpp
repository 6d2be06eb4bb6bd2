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

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "improvelearn/errors.hpp"
#include "improvelearn/rng.hpp"
#include "improvelearn/trainer.hpp"
#include "scenario_impl.hpp"

namespace improvelearn::detail {

namespace {

std::vector<double> reals(const Json& p, const char* key) {
  std::vector<double> v = p.at(key).get<std::vector<double>>();
  if (v.empty()) throw ArgumentError(std::string("parameter '") + key + "' must be nonempty");
  return v;
}

// Relative error between the analytic gradient and central differences for
// one random (weights, batch) draw.
double grad_check_once(const SyntheticDataset& data, std::uint64_t seed, std::size_t hidden) {
  Rng rng(seed);
  Arch arch = uniform01(rng) < 0.5 ? Arch::kLinear : Arch::kMlp;
  Model model = Model::init(arch, data.params.d, hidden, rng());
  Eigen::VectorXd p = model.params();
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) += 0.5 * standard_normal(rng);
  model.set_params(p);
  std::vector<std::size_t> rows(32);
  for (auto& r : rows) r = data.train_idx[uniform_index(rng, data.train_idx.size())];
  double w_fp = uniform(rng, 0.1, 10.0), w_fn = uniform(rng, 0.1, 10.0);

  Eigen::VectorXd g = model.loss_grad(data.X, data.y, rows, w_fp, w_fn);
  Eigen::VectorXd fd(p.size());
  const double h = 1e-5;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd q = p;
    q(i) = p(i) + h;
    model.set_params(q);
    double up = model_loss(model, data.X, data.y, rows, w_fp, w_fn);
    q(i) = p(i) - h;
    model.set_params(q);
    double down = model_loss(model, data.X, data.y, rows, w_fp, w_fn);
    fd(i) = (up - down) / (2 * h);
  }
  return (g - fd).norm() / std::max({g.norm(), fd.norm(), 1e-12});
}

}  // namespace

ScenarioResult run_riskaverse_sweep(const Json& p, std::uint64_t seed, unsigned jobs) {
  SweepSpec spec;
  spec.data.n = param_count(p, "n");
  spec.data.d = param_count(p, "d");
  spec.data.separation = p.at("separation").get<double>();
  spec.data.train_fraction = p.at("train_fraction").get<double>();
  spec.dataset_seeds.clear();
  for (double s : reals(p, "dataset_seeds")) {
    if (s < 0 || s != std::floor(s)) throw ArgumentError("dataset seeds must be nonnegative integers");
    spec.dataset_seeds.push_back(static_cast<std::uint64_t>(s));
  }
  std::vector<std::string> archs = p.at("archs").get<std::vector<std::string>>();
  if (archs.empty()) throw ArgumentError("parameter 'archs' must be nonempty");
  std::vector<double> ratios = reals(p, "fp_fn_ratios");
  TrainConfig base;
  base.learning_rate = p.at("learning_rate").get<double>();
  base.epochs = static_cast<int>(param_positive_count(p, "epochs"));
  base.batch_size = param_positive_count(p, "batch_size");
  base.hidden = param_positive_count(p, "hidden");
  for (const auto& a : archs) {
    for (double ratio : ratios) {
      if (!(ratio > 0)) throw ArgumentError("loss weight ratios must be positive");
      SweepModel sm;
      sm.arch = parse_arch(a);
      sm.train = base;
      sm.train.w_fp = 1.0;
      sm.train.w_fn = 1.0 / ratio;
      spec.models.push_back(sm);
    }
  }
  spec.taus = reals(p, "taus");
  spec.r_grid = reals(p, "r_grid");
  spec.root_seed = seed;
  spec.T = static_cast<int>(param_positive_count(p, "T"));
  spec.alpha_factor = p.at("alpha_factor").get<double>();
  for (double m : p.at("mask").get<std::vector<double>>()) {
    if (m < 0 || m != std::floor(m)) throw ArgumentError("mask entries must be coordinate indices");
    spec.mask.push_back(static_cast<std::size_t>(m));
  }
  const std::size_t grad_checks = param_count(p, "grad_checks");

  std::vector<SweepRow> rows = sweep_budget(spec, jobs);
  ScenarioResult out;
  out.columns = sweep_csv_columns();
  for (const auto& row : rows) out.rows.push_back(sweep_csv_fields(row));

  // Trend metrics: first architecture, first tau, largest vs smallest ratio.
  const Arch arch0 = parse_arch(archs.front());
  const double tau0 = spec.taus.front();
  const double r_max = *std::max_element(spec.r_grid.begin(), spec.r_grid.end());
  const double w_fn_risk = 1.0 / *std::max_element(ratios.begin(), ratios.end());
  const double w_fn_plain = 1.0 / *std::min_element(ratios.begin(), ratios.end());
  double wbce_max = 0, bce_max = 0, fpr_risk = 0;
  std::size_t le = 0;
  for (std::uint64_t ds : spec.dataset_seeds) {
    double wb = NAN, b = NAN;
    for (const auto& row : rows) {
      if (row.dataset_seed != ds || row.arch != arch0 || row.tau != tau0 || row.r != r_max) continue;
      if (row.w_fn == w_fn_risk) {
        wb = row.report.err_after;
        fpr_risk = std::max(fpr_risk, row.report.fpr_before);
      }
      if (row.w_fn == w_fn_plain) b = row.report.err_after;
    }
    wbce_max = std::max(wbce_max, wb);
    bce_max = std::max(bce_max, b);
    le += wb <= b;
  }

  // Error along the r grid for every (seed, model, tau) cell.
  std::map<std::tuple<std::uint64_t, int, double, double>, std::vector<std::pair<double, double>>> curves;
  for (const auto& row : rows) {
    curves[{row.dataset_seed, static_cast<int>(row.arch), row.w_fn, row.tau}].emplace_back(
        row.r, row.report.err_after);
  }
  std::size_t violations = 0;
  double worst_rise = 0;
  for (auto& [key, curve] : curves) {
    std::stable_sort(curve.begin(), curve.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < curve.size(); ++i) {
      double rise = curve[i].second - curve[i - 1].second;
      worst_rise = std::max(worst_rise, rise);
      violations += rise > 0.01;
    }
  }

  double grad_err = 0;
  if (grad_checks > 0) {
    SyntheticDataset data = generate_synthetic(spec.data, spec.dataset_seeds.front());
    for (std::size_t i = 0; i < grad_checks; ++i) {
      grad_err = std::max(grad_err, grad_check_once(data, derive_seed(seed ^ 0x67726164ULL, i), base.hidden));
    }
  }

  out.metrics["seeds"] = spec.dataset_seeds.size();
  out.metrics["wbce_err_after_max_r"] = wbce_max;
  out.metrics["bce_err_after_max_r"] = bce_max;
  out.metrics["wbce_le_bce_fraction"] =
      static_cast<double>(le) / static_cast<double>(spec.dataset_seeds.size());
  out.metrics["wbce_fpr_before"] = fpr_risk;
  out.metrics["monotone_violations"] = violations;
  out.metrics["max_error_rise"] = worst_rise;
  out.metrics["grad_check_max_rel_err"] = grad_err;
  return out;
}

}  // namespace improvelearn::detail
