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

#include <cmath>
#include <limits>

#include "improvelearn/errors.hpp"
#include "improvelearn/rng.hpp"
#include "improvelearn/trainer.hpp"

using namespace improvelearn;

namespace {

const SyntheticDataset& shared_data() {
  static const SyntheticDataset data = generate_synthetic(SyntheticParams{}, 0);
  return data;
}

TrainConfig config(double w_fp, double w_fn) {
  TrainConfig c;
  c.w_fp = w_fp;
  c.w_fn = w_fn;
  c.seed = 3;
  return c;
}

double test_error(const Model& m, const SyntheticDataset& d) {
  double e = 0;
  for (auto i : d.test_idx) e += m.predict(d.X.row(i).transpose()) != d.y[i];
  return e / static_cast<double>(d.test_idx.size());
}

double test_fpr(const Model& m, const SyntheticDataset& d) {
  double fp = 0, neg = 0;
  for (auto i : d.test_idx) {
    if (d.y[i] == 0) {
      ++neg;
      fp += m.predict(d.X.row(i).transpose());
    }
  }
  return fp / neg;
}

double fd_rel_error(const Model& base, const SyntheticDataset& d, const std::vector<std::size_t>& rows,
                    double w_fp, double w_fn) {
  Model m = base;
  Eigen::VectorXd p = m.params();
  Eigen::VectorXd g = m.loss_grad(d.X, d.y, rows, w_fp, w_fn);
  Eigen::VectorXd fd(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd q = p;
    q(i) += 1e-5;
    m.set_params(q);
    double up = model_loss(m, d.X, d.y, rows, w_fp, w_fn);
    q(i) -= 2e-5;
    m.set_params(q);
    double down = model_loss(m, d.X, d.y, rows, w_fp, w_fn);
    fd(i) = (up - down) / 2e-5;
  }
  return (g - fd).norm() / std::max(g.norm(), 1e-12);
}

}  // namespace

TEST(Synthetic, ShapesSplitAndDeterminism) {
  const SyntheticDataset& d = shared_data();
  EXPECT_EQ(d.X.rows(), 2230);
  EXPECT_EQ(d.X.cols(), 8);
  EXPECT_EQ(d.train_idx.size() + d.test_idx.size(), 2230u);
  EXPECT_EQ(d.train_idx.size(), 1561u);
  EXPECT_NEAR(d.direction.norm(), 1.0, 1e-12);
  SyntheticDataset again = generate_synthetic(SyntheticParams{}, 0);
  EXPECT_TRUE(again.X == d.X);
  EXPECT_EQ(again.y, d.y);
  for (Eigen::Index i = 0; i < d.X.rows(); ++i) EXPECT_EQ(d.y[i], d.f_star(d.X.row(i).transpose()));
}

TEST(Synthetic, NearestNeighbourLeaveOneOutErrorIsSmall) {
  const SyntheticDataset& d = shared_data();
  const Eigen::Index n = d.X.rows();
  Eigen::VectorXd sq = d.X.rowwise().squaredNorm();
  Eigen::MatrixXd G = d.X * d.X.transpose();
  std::size_t errors = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist = sq(i) + sq(j) - 2 * G(i, j);
      if (dist < best_d) {
        best_d = dist;
        best = j;
      }
    }
    errors += d.y[i] != d.y[best];
  }
  EXPECT_LE(static_cast<double>(errors) / n, 0.02);
}

TEST(Loss, WeightedBceValue) {
  EXPECT_NEAR(wbce_loss({0.5}, {0}, 2.0, 1.0), 2 * std::log(2.0), 1e-12);
  EXPECT_NEAR(wbce_loss({0.0}, {1}, 1.0, 1.0), -std::log(kProbClamp), 1e-9);
}

TEST(Model, GradientMatchesFiniteDifferences) {
  const SyntheticDataset& d = shared_data();
  Rng rng(51);
  for (Arch arch : {Arch::kLinear, Arch::kMlp}) {
    for (int trial = 0; trial < 10; ++trial) {
      Model m = Model::init(arch, 8, 16, rng());
      Eigen::VectorXd p = m.params();
      for (Eigen::Index i = 0; i < p.size(); ++i) p(i) += 0.5 * standard_normal(rng);
      m.set_params(p);
      std::vector<std::size_t> rows(32);
      for (auto& r : rows) r = uniform_index(rng, d.X.rows());
      EXPECT_LE(fd_rel_error(m, d, rows, uniform(rng, 0.1, 10), uniform(rng, 0.1, 10)), 1e-4)
          << to_string(arch);
    }
  }
}

TEST(Model, ParamsRoundTrip) {
  Model m = Model::init(Arch::kMlp, 8, 16, 1);
  EXPECT_EQ(m.num_params(), 16u * 8 + 16 + 16 + 1);
  Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(m.num_params(), -1, 1);
  m.set_params(p);
  EXPECT_TRUE(m.params() == p);
  EXPECT_THROW(m.set_params(Eigen::VectorXd::Zero(3)), ArgumentError);
}

TEST(Train, BalancedLinearModelIsAccurate) {
  Model m = train(shared_data(), Arch::kLinear, config(1, 1));
  EXPECT_LE(test_error(m, shared_data()), 0.03);
}

TEST(Train, RiskAverseWeightsSuppressFalsePositives) {
  Model m = train(shared_data(), Arch::kLinear, config(1, 1e-3));
  EXPECT_LE(test_fpr(m, shared_data()), 0.005);
}

TEST(Train, RaisingTauNeverAddsPositives) {
  Model m = train(shared_data(), Arch::kMlp, config(1, 1));
  const SyntheticDataset& d = shared_data();
  Model hi = m;
  hi.set_tau(0.9);
  for (auto i : d.test_idx) EXPECT_LE(hi.predict(d.X.row(i).transpose()), m.predict(d.X.row(i).transpose()));
}

TEST(Train, DivergenceIsReported) {
  TrainConfig c = config(1, 1);
  c.learning_rate = 1e308;
  EXPECT_THROW(train(shared_data(), Arch::kMlp, c), DivergenceError);
}

TEST(Improve, OneDimensionalStepCrossesBoundary) {
  Model m = Model::init(Arch::kLinear, 1, 1, 0);
  Eigen::VectorXd p(2);
  p << 2.0, -1.0;  // boundary at x = 0.5
  m.set_params(p);
  Eigen::VectorXd x(1);
  x << 0.3;
  ImproveConfig cfg;
  cfg.r = 0.25;
  cfg.T = 5;
  cfg.alpha = 0.05;
  Eigen::VectorXd y = pgd_improve(x, m, cfg);
  EXPECT_NEAR(y(0), 0.55, 1e-12);
  EXPECT_EQ(m.predict(y), 1);
  EXPECT_THROW(pgd_improve(y, m, cfg), PreconditionError);
}

TEST(Improve, RespectsBudgetAndMask) {
  const SyntheticDataset& d = shared_data();
  Model m = train(d, Arch::kMlp, config(1, 1));
  Rng rng(52);
  ImproveConfig cfg;
  cfg.mask = {0, 3, 5};
  for (int trial = 0; trial < 200; ++trial) {
    cfg.r = uniform(rng, 0, 2);
    cfg.alpha = uniform(rng, 0.01, 0.5);
    Eigen::VectorXd x = d.X.row(d.test_idx[uniform_index(rng, d.test_idx.size())]).transpose();
    if (m.predict(x)) continue;
    Eigen::VectorXd y = pgd_improve(x, m, cfg);
    EXPECT_LE((y - x).lpNorm<Eigen::Infinity>(), cfg.r + 1e-12);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (j != 0 && j != 3 && j != 5) EXPECT_EQ(y(j), x(j));
    }
  }
}

TEST(Improve, RiskAverseModelTurnsFalseNegativesIntoTruePositives) {
  const SyntheticDataset& d = shared_data();
  Model m = train(d, Arch::kLinear, config(1, 1e-2));
  std::size_t fn = 0;
  for (auto i : d.test_idx) fn += d.y[i] == 1 && !m.predict(d.X.row(i).transpose());
  ASSERT_GT(fn, 0u);
  ImproveConfig cfg;
  cfg.r = 3.0;
  cfg.alpha = 2 * cfg.r / cfg.T;
  TransitionReport rep =
      evaluate_improvement(m, d, cfg, [&](const Eigen::VectorXd& x) { return d.f_star(x); });
  EXPECT_GE(static_cast<double>(rep.fn_to_tp) / fn, 0.95);
  EXPECT_LE(static_cast<double>(rep.tn_to_fp + rep.fn_to_fp) / rep.initially_negative, 0.02);
}

TEST(Sweep, JobCountDoesNotChangeRows) {
  SweepSpec spec;
  spec.data.n = 400;
  spec.models = {{Arch::kLinear, config(1, 1)}, {Arch::kMlp, config(1, 1e-3)}};
  spec.models[0].train.epochs = spec.models[1].train.epochs = 10;
  spec.r_grid = {0, 1};
  spec.dataset_seeds = {0, 1};
  auto a = sweep_budget(spec, 1), b = sweep_budget(spec, 3);
  ASSERT_EQ(a.size(), b.size());
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(sweep_csv_fields(a[i]), sweep_csv_fields(b[i]));
  EXPECT_EQ(sweep_csv_fields(a[0]).size(), sweep_csv_columns().size());
}

TEST(Sweep, FormatG6) {
  EXPECT_EQ(format_g6(0.5), "0.5");
  EXPECT_EQ(format_g6(1.0 / 3.0), "0.333333");
}
