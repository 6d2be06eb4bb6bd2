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

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "improvelearn/point.hpp"

namespace improvelearn {

struct SyntheticParams {
  std::size_t n = 2230;
  std::size_t d = 8;
  double separation = 4.0;
  double train_fraction = 0.7;
};

/// Two unit-variance Gaussian clusters centered at ±(separation/2)·u for a
/// random unit direction u, balanced. With separation > 0 the labels are the
/// Bayes rule 1[<u, x> >= 0], which is also the ground truth f*; with
/// separation 0 they are the cluster ids.
struct SyntheticDataset {
  SyntheticParams params;
  std::uint64_t seed = 0;
  Eigen::MatrixXd X;  // n x d
  std::vector<Label> y;
  Eigen::VectorXd direction;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;

  Label f_star(const Eigen::VectorXd& x) const { return direction.dot(x) >= 0.0; }
};

SyntheticDataset generate_synthetic(const SyntheticParams& params, std::uint64_t seed);

enum class Arch { kLinear, kMlp };
Arch parse_arch(const std::string& name);
std::string to_string(Arch arch);

/// Sigmoid-headed classifier: linear, or one tanh hidden layer.
class Model {
 public:
  Model() = default;
  static Model init(Arch arch, std::size_t d, std::size_t hidden, std::uint64_t seed,
                    double tau = 0.5);

  Arch arch() const { return arch_; }
  std::size_t dim() const { return d_; }
  double tau() const { return tau_; }
  void set_tau(double tau);

  double logit(const Eigen::VectorXd& x) const;
  /// ŷ in (0, 1).
  double forward(const Eigen::VectorXd& x) const;
  Label predict(const Eigen::VectorXd& x) const { return forward(x) >= tau_; }
  /// ∇_x log ŷ(x).
  Eigen::VectorXd input_grad_log(const Eigen::VectorXd& x) const;

  std::size_t num_params() const;
  Eigen::VectorXd params() const;
  void set_params(const Eigen::VectorXd& p);
  /// Gradient of the batch wBCE loss with respect to params().
  Eigen::VectorXd loss_grad(const Eigen::MatrixXd& X, const std::vector<Label>& y,
                            const std::vector<std::size_t>& rows, double w_fp, double w_fn) const;

 private:
  Arch arch_ = Arch::kLinear;
  std::size_t d_ = 0;
  std::size_t hidden_ = 0;
  double tau_ = 0.5;
  Eigen::MatrixXd W1_;  // hidden x d (MLP only)
  Eigen::VectorXd b1_;
  Eigen::VectorXd w2_;  // d (linear) or hidden (MLP)
  double b2_ = 0.0;
};

inline constexpr double kProbClamp = 1e-7;

/// -(1/n) Σ [w_fp (1-y) log(1-ŷ) + w_fn y log ŷ], with ŷ clamped to [1e-7, 1-1e-7].
double wbce_loss(const std::vector<double>& y_hat, const std::vector<Label>& y, double w_fp,
                 double w_fn);

/// wBCE of the model on the given rows.
double model_loss(const Model& model, const Eigen::MatrixXd& X, const std::vector<Label>& y,
                  const std::vector<std::size_t>& rows, double w_fp, double w_fn);

struct TrainConfig {
  double w_fp = 1.0;
  double w_fn = 1.0;
  double learning_rate = 0.5;
  int epochs = 100;
  std::size_t batch_size = 64;
  std::size_t hidden = 16;
  std::uint64_t seed = 0;
};

/// Plain mini-batch gradient descent on the training split.
Model train(const SyntheticDataset& data, Arch arch, const TrainConfig& config);

struct ImproveConfig {
  double r = 0.0;
  double alpha = 0.1;
  int T = 20;
  /// Improvable coordinates; empty means all.
  std::vector<std::size_t> mask;
};

/// T sign-gradient steps of ∇_x log ŷ on the masked coordinates, each
/// followed by a coordinatewise clip to [x - r, x + r]. Requires predict(x) = 0.
Eigen::VectorXd pgd_improve(const Eigen::VectorXd& x, const Model& model, const ImproveConfig& cfg);

struct TransitionReport {
  std::size_t tn_to_tp = 0, tn_to_fp = 0, fn_to_tp = 0, fn_to_fp = 0, stayed = 0;
  std::size_t initially_negative = 0;
  double fpr_before = 0, fpr_after = 0, fnr_before = 0, fnr_after = 0;
  double err_before = 0, err_after = 0;
};

using FStarRule = std::function<Label(const Eigen::VectorXd&)>;

/// Test-split agents predicted 0 run PGD; an agent whose improved point is
/// classified positive moves there, everyone else is scored in place.
TransitionReport evaluate_improvement(const Model& model, const SyntheticDataset& data,
                                      const ImproveConfig& improve, const FStarRule& f_star);

struct SweepModel {
  Arch arch = Arch::kLinear;
  TrainConfig train;
};

struct SweepSpec {
  SyntheticParams data;
  std::vector<SweepModel> models;
  std::vector<double> taus = {0.5};
  std::vector<double> r_grid = {0.0};
  std::vector<std::uint64_t> dataset_seeds = {0};
  std::uint64_t root_seed = 0;
  int T = 20;
  /// alpha = alpha_factor * r / T (a small positive value at r = 0).
  double alpha_factor = 2.0;
  std::vector<std::size_t> mask;
};

struct SweepRow {
  std::uint64_t dataset_seed = 0;
  Arch arch = Arch::kLinear;
  double w_fp = 1, w_fn = 1, tau = 0.5, r = 0, alpha = 0;
  int T = 0;
  std::uint64_t trial_seed = 0;
  TransitionReport report;
};

std::vector<SweepRow> sweep_budget(const SweepSpec& spec, unsigned jobs = 1);

const std::vector<std::string>& sweep_csv_columns();
std::vector<std::string> sweep_csv_fields(const SweepRow& row);
std::string format_g6(double v);

}  // namespace improvelearn
