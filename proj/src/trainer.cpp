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

#include "improvelearn/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "improvelearn/distribution.hpp"
#include "improvelearn/errors.hpp"
#include "improvelearn/parallel.hpp"
#include "improvelearn/rng.hpp"

namespace improvelearn {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticParams& params, std::uint64_t seed) {
  if (params.d < 2) throw ArgumentError("synthetic data needs d >= 2");
  if (params.n < 2) throw ArgumentError("synthetic data needs n >= 2");
  if (!(params.separation >= 0) || !std::isfinite(params.separation)) {
    throw ArgumentError("separation must be finite and >= 0");
  }
  if (!(params.train_fraction > 0 && params.train_fraction < 1)) {
    throw ArgumentError("train fraction must lie in (0, 1)");
  }
  SyntheticDataset ds;
  ds.params = params;
  ds.seed = seed;
  Rng rng(derive_seed(seed, 0));
  auto u = sample_unit_vector(rng, params.d);
  ds.direction = Eigen::Map<Eigen::VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
  const std::size_t n0 = params.n / 2;
  ds.X.resize(static_cast<Eigen::Index>(params.n), static_cast<Eigen::Index>(params.d));
  ds.y.resize(params.n);
  for (std::size_t i = 0; i < params.n; ++i) {
    int cluster = i < n0 ? 0 : 1;
    double shift = (cluster ? 0.5 : -0.5) * params.separation;
    for (std::size_t j = 0; j < params.d; ++j) {
      ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          shift * u[j] + standard_normal(rng);
    }
    ds.y[i] = params.separation > 0 ? ds.f_star(ds.X.row(static_cast<Eigen::Index>(i)).transpose())
                                    : cluster;
  }
  std::vector<std::size_t> perm(params.n);
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(perm, rng);
  auto n_train = static_cast<std::size_t>(std::llround(params.train_fraction * params.n));
  n_train = std::clamp<std::size_t>(n_train, 1, params.n - 1);
  ds.train_idx.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  ds.test_idx.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  std::sort(ds.train_idx.begin(), ds.train_idx.end());
  std::sort(ds.test_idx.begin(), ds.test_idx.end());
  return ds;
}

Arch parse_arch(const std::string& name) {
  if (name == "linear") return Arch::kLinear;
  if (name == "mlp") return Arch::kMlp;
  throw ArgumentError("unknown model architecture '" + name + "'");
}

std::string to_string(Arch arch) { return arch == Arch::kLinear ? "linear" : "mlp"; }

Model Model::init(Arch arch, std::size_t d, std::size_t hidden, std::uint64_t seed, double tau) {
  if (d == 0) throw ArgumentError("model input dimension must be >= 1");
  if (arch == Arch::kMlp && hidden == 0) throw ArgumentError("MLP needs a hidden width >= 1");
  Model m;
  m.arch_ = arch;
  m.d_ = d;
  m.set_tau(tau);
  Rng rng(derive_seed(seed, 1));
  const auto di = static_cast<Eigen::Index>(d);
  if (arch == Arch::kLinear) {
    m.w2_.resize(di);
    for (Eigen::Index i = 0; i < di; ++i) m.w2_(i) = 0.01 * standard_normal(rng);
  } else {
    m.hidden_ = hidden;
    const auto hi = static_cast<Eigen::Index>(hidden);
    m.W1_.resize(hi, di);
    double s1 = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index r = 0; r < hi; ++r) {
      for (Eigen::Index c = 0; c < di; ++c) m.W1_(r, c) = s1 * standard_normal(rng);
    }
    m.b1_ = Eigen::VectorXd::Zero(hi);
    m.w2_.resize(hi);
    double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (Eigen::Index i = 0; i < hi; ++i) m.w2_(i) = s2 * standard_normal(rng);
  }
  return m;
}

void Model::set_tau(double tau) {
  if (!(tau > 0 && tau < 1)) throw ArgumentError("decision threshold must lie in (0, 1)");
  tau_ = tau;
}

double Model::logit(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != d_) throw ArgumentError("model input dimension mismatch");
  if (arch_ == Arch::kLinear) return w2_.dot(x) + b2_;
  Eigen::VectorXd a = (W1_ * x + b1_).array().tanh();
  return w2_.dot(a) + b2_;
}

double Model::forward(const Eigen::VectorXd& x) const { return sigmoid(logit(x)); }

Eigen::VectorXd Model::input_grad_log(const Eigen::VectorXd& x) const {
  double one_minus = 1.0 - forward(x);
  if (arch_ == Arch::kLinear) return one_minus * w2_;
  Eigen::VectorXd a = (W1_ * x + b1_).array().tanh();
  Eigen::VectorXd delta = w2_.array() * (1.0 - a.array().square());
  return one_minus * (W1_.transpose() * delta);
}

std::size_t Model::num_params() const {
  if (arch_ == Arch::kLinear) return d_ + 1;
  return hidden_ * d_ + hidden_ + hidden_ + 1;
}

Eigen::VectorXd Model::params() const {
  Eigen::VectorXd p(static_cast<Eigen::Index>(num_params()));
  Eigen::Index k = 0;
  if (arch_ == Arch::kMlp) {
    for (Eigen::Index r = 0; r < W1_.rows(); ++r) {
      for (Eigen::Index c = 0; c < W1_.cols(); ++c) p(k++) = W1_(r, c);
    }
    for (Eigen::Index i = 0; i < b1_.size(); ++i) p(k++) = b1_(i);
  }
  for (Eigen::Index i = 0; i < w2_.size(); ++i) p(k++) = w2_(i);
  p(k) = b2_;
  return p;
}

void Model::set_params(const Eigen::VectorXd& p) {
  if (static_cast<std::size_t>(p.size()) != num_params()) throw ArgumentError("parameter size mismatch");
  Eigen::Index k = 0;
  if (arch_ == Arch::kMlp) {
    for (Eigen::Index r = 0; r < W1_.rows(); ++r) {
      for (Eigen::Index c = 0; c < W1_.cols(); ++c) W1_(r, c) = p(k++);
    }
    for (Eigen::Index i = 0; i < b1_.size(); ++i) b1_(i) = p(k++);
  }
  for (Eigen::Index i = 0; i < w2_.size(); ++i) w2_(i) = p(k++);
  b2_ = p(k);
}

Eigen::VectorXd Model::loss_grad(const Eigen::MatrixXd& X, const std::vector<Label>& y,
                                 const std::vector<std::size_t>& rows, double w_fp,
                                 double w_fn) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_params()));
  if (rows.empty()) return g;
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  const auto hw = static_cast<Eigen::Index>(arch_ == Arch::kMlp ? hidden_ * d_ + hidden_ : 0);
  const Eigen::Index nw2 = w2_.size();
  for (std::size_t row : rows) {
    Eigen::VectorXd x = X.row(static_cast<Eigen::Index>(row)).transpose();
    double yi = y[row];
    if (arch_ == Arch::kLinear) {
      double yh = sigmoid(w2_.dot(x) + b2_);
      double dz = inv_n * (w_fp * (1 - yi) * yh - w_fn * yi * (1 - yh));
      g.segment(0, nw2) += dz * x;
      g(nw2) += dz;
    } else {
      Eigen::VectorXd a = (W1_ * x + b1_).array().tanh();
      double yh = sigmoid(w2_.dot(a) + b2_);
      double dz = inv_n * (w_fp * (1 - yi) * yh - w_fn * yi * (1 - yh));
      g.segment(hw, nw2) += dz * a;
      g(hw + nw2) += dz;
      Eigen::VectorXd delta = dz * w2_.array() * (1.0 - a.array().square());
      Eigen::Index k = 0;
      for (Eigen::Index r = 0; r < W1_.rows(); ++r) {
        for (Eigen::Index c = 0; c < W1_.cols(); ++c) g(k++) += delta(r) * x(c);
      }
      g.segment(k, b1_.size()) += delta;
    }
  }
  return g;
}

double wbce_loss(const std::vector<double>& y_hat, const std::vector<Label>& y, double w_fp,
                 double w_fn) {
  if (y_hat.size() != y.size()) throw ArgumentError("wbce_loss: length mismatch");
  if (y.empty()) throw ArgumentError("wbce_loss: empty input");
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double p = std::clamp(y_hat[i], kProbClamp, 1.0 - kProbClamp);
    s += y[i] ? w_fn * std::log(p) : w_fp * std::log(1.0 - p);
  }
  return -s / static_cast<double>(y.size());
}

double model_loss(const Model& model, const Eigen::MatrixXd& X, const std::vector<Label>& y,
                  const std::vector<std::size_t>& rows, double w_fp, double w_fn) {
  std::vector<double> yh;
  std::vector<Label> yy;
  for (std::size_t r : rows) {
    yh.push_back(model.forward(X.row(static_cast<Eigen::Index>(r)).transpose()));
    yy.push_back(y[r]);
  }
  return wbce_loss(yh, yy, w_fp, w_fn);
}

Model train(const SyntheticDataset& data, Arch arch, const TrainConfig& cfg) {
  if (data.train_idx.empty()) throw ArgumentError("training split is empty");
  if (!(cfg.w_fp > 0 && cfg.w_fn > 0)) throw ArgumentError("loss weights must be positive");
  if (cfg.batch_size == 0 || cfg.epochs < 1) throw ArgumentError("bad batch size or epoch count");
  Model model = Model::init(arch, data.params.d, cfg.hidden, cfg.seed);
  Rng rng(derive_seed(cfg.seed, 2));
  std::vector<std::size_t> order = data.train_idx;
  Eigen::VectorXd p = model.params();
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(order, rng);
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size, ++batch_no) {
      std::vector<std::size_t> batch(
          order.begin() + static_cast<std::ptrdiff_t>(start),
          order.begin() + static_cast<std::ptrdiff_t>(std::min(order.size(), start + cfg.batch_size)));
      Eigen::VectorXd g = model.loss_grad(data.X, data.y, batch, cfg.w_fp, cfg.w_fn);
      p -= cfg.learning_rate * g;
      if (!p.allFinite()) {
        throw DivergenceError("non-finite parameters at epoch " + std::to_string(epoch) +
                                  ", batch " + std::to_string(batch_no),
                              epoch, batch_no);
      }
      model.set_params(p);
    }
    double loss = model_loss(model, data.X, data.y, data.train_idx, cfg.w_fp, cfg.w_fn);
    if (!std::isfinite(loss)) {
      throw DivergenceError("non-finite training loss at epoch " + std::to_string(epoch), epoch,
                            batch_no);
    }
  }
  return model;
}

Eigen::VectorXd pgd_improve(const Eigen::VectorXd& x, const Model& model, const ImproveConfig& cfg) {
  if (cfg.T < 1) throw ArgumentError("PGD needs T >= 1");
  if (!(cfg.alpha > 0)) throw ArgumentError("PGD step size must be positive");
  if (!(cfg.r >= 0)) throw ArgumentError("improvement budget must be >= 0");
  if (model.predict(x) != 0) {
    throw PreconditionError("only negatively classified agents improve");
  }
  const Eigen::Index d = x.size();
  std::vector<Eigen::Index> coords;
  if (cfg.mask.empty()) {
    for (Eigen::Index i = 0; i < d; ++i) coords.push_back(i);
  } else {
    for (std::size_t i : cfg.mask) {
      if (static_cast<Eigen::Index>(i) >= d) throw ArgumentError("mask index out of range");
      coords.push_back(static_cast<Eigen::Index>(i));
    }
  }
  Eigen::VectorXd xt = x;
  for (int t = 0; t < cfg.T; ++t) {
    Eigen::VectorXd g = model.input_grad_log(xt);
    for (Eigen::Index i : coords) {
      double step = g(i) > 0 ? cfg.alpha : (g(i) < 0 ? -cfg.alpha : 0.0);
      xt(i) = std::clamp(xt(i) + step, x(i) - cfg.r, x(i) + cfg.r);
    }
  }
  return xt;
}

TransitionReport evaluate_improvement(const Model& model, const SyntheticDataset& data,
                                      const ImproveConfig& improve, const FStarRule& f_star) {
  if (data.test_idx.empty()) throw ArgumentError("test split is empty");
  TransitionReport rep;
  // Confusion counts: [truth][prediction].
  std::size_t before[2][2] = {{0, 0}, {0, 0}};
  std::size_t after[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t row : data.test_idx) {
    Eigen::VectorXd x = data.X.row(static_cast<Eigen::Index>(row)).transpose();
    Label h0 = model.predict(x);
    Label f0 = f_star(x);
    ++before[f0][h0];
    if (h0 == 1) {
      ++after[f0][1];
      continue;
    }
    ++rep.initially_negative;
    Eigen::VectorXd moved = pgd_improve(x, model, improve);
    if (model.predict(moved) == 1) {
      Label f1 = f_star(moved);
      if (f0 == 0) {
        ++(f1 ? rep.tn_to_tp : rep.tn_to_fp);
      } else {
        ++(f1 ? rep.fn_to_tp : rep.fn_to_fp);
      }
      ++after[f1][1];
    } else {
      ++rep.stayed;
      ++after[f0][0];
    }
  }
  auto rates = [&](std::size_t c[2][2], double& fpr, double& fnr, double& err) {
    std::size_t neg = c[0][0] + c[0][1], pos = c[1][0] + c[1][1];
    fpr = neg ? static_cast<double>(c[0][1]) / static_cast<double>(neg) : 0.0;
    fnr = pos ? static_cast<double>(c[1][0]) / static_cast<double>(pos) : 0.0;
    err = static_cast<double>(c[0][1] + c[1][0]) / static_cast<double>(neg + pos);
  };
  rates(before, rep.fpr_before, rep.fnr_before, rep.err_before);
  rates(after, rep.fpr_after, rep.fnr_after, rep.err_after);
  return rep;
}

std::vector<SweepRow> sweep_budget(const SweepSpec& spec, unsigned jobs) {
  if (spec.models.empty() || spec.taus.empty() || spec.r_grid.empty() ||
      spec.dataset_seeds.empty()) {
    throw ArgumentError("sweep grids must be nonempty");
  }
  std::vector<SyntheticDataset> datasets;
  for (std::uint64_t s : spec.dataset_seeds) datasets.push_back(generate_synthetic(spec.data, s));
  const std::size_t n_cells = datasets.size() * spec.models.size();
  std::vector<std::vector<SweepRow>> cells(n_cells);
  parallel_for(n_cells, jobs, [&](std::size_t cell) {
    const SyntheticDataset& data = datasets[cell / spec.models.size()];
    const std::size_t mi = cell % spec.models.size();
    const SweepModel& sm = spec.models[mi];
    TrainConfig cfg = sm.train;
    cfg.seed = derive_seed(derive_seed(spec.root_seed, data.seed), mi);
    Model model = train(data, sm.arch, cfg);
    FStarRule f = [&data](const Eigen::VectorXd& x) { return data.f_star(x); };
    for (double tau : spec.taus) {
      model.set_tau(tau);
      for (double r : spec.r_grid) {
        ImproveConfig ic;
        ic.r = r;
        ic.T = spec.T;
        ic.alpha = r > 0 ? spec.alpha_factor * r / spec.T : 1e-6;
        ic.mask = spec.mask;
        SweepRow row;
        row.dataset_seed = data.seed;
        row.arch = sm.arch;
        row.w_fp = cfg.w_fp;
        row.w_fn = cfg.w_fn;
        row.tau = tau;
        row.r = r;
        row.alpha = ic.alpha;
        row.T = ic.T;
        row.trial_seed = cfg.seed;
        row.report = evaluate_improvement(model, data, ic, f);
        cells[cell].push_back(row);
      }
    }
  });
  std::vector<SweepRow> out;
  for (auto& c : cells) out.insert(out.end(), c.begin(), c.end());
  return out;
}

const std::vector<std::string>& sweep_csv_columns() {
  static const std::vector<std::string> cols = {
      "dataset_seed", "model_arch", "w_fp",     "w_fn",      "tau",       "r",
      "alpha",        "T",          "trial_seed", "err_before", "err_after", "fpr_before",
      "fpr_after",    "fnr_before", "fnr_after", "tn_to_tp",  "tn_to_fp",  "fn_to_tp",
      "fn_to_fp",     "stayed"};
  return cols;
}

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string> sweep_csv_fields(const SweepRow& row) {
  const TransitionReport& t = row.report;
  return {std::to_string(row.dataset_seed),
          to_string(row.arch),
          format_g6(row.w_fp),
          format_g6(row.w_fn),
          format_g6(row.tau),
          format_g6(row.r),
          format_g6(row.alpha),
          std::to_string(row.T),
          std::to_string(row.trial_seed),
          format_g6(t.err_before),
          format_g6(t.err_after),
          format_g6(t.fpr_before),
          format_g6(t.fpr_after),
          format_g6(t.fnr_before),
          format_g6(t.fnr_after),
          std::to_string(t.tn_to_tp),
          std::to_string(t.tn_to_fp),
          std::to_string(t.fn_to_tp),
          std::to_string(t.fn_to_fp),
          std::to_string(t.stayed)};
}

}  // namespace improvelearn
