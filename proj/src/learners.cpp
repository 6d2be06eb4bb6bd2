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

#include "improvelearn/learners.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "improvelearn/errors.hpp"

namespace improvelearn {

Hypothesis learn_threshold_conservative(const Sample& sample) {
  double t = 1.0;
  bool any_positive = false;
  for (const auto& ex : sample) {
    if (ex.point.dim() != 1) throw ArgumentError("threshold learner expects points on the line");
    if (ex.label == 1) {
      t = any_positive ? std::min(t, ex.point[0]) : ex.point[0];
      any_positive = true;
    }
  }
  for (const auto& ex : sample) {
    if (ex.label == 0 && ex.point[0] >= t) {
      throw InconsistentSample("negative example " + ex.point.to_string() +
                               " lies at or above the learned threshold");
    }
  }
  return Hypothesis::threshold(t);
}

ClosureOperator ClosureOperator::thresholds() { return ClosureOperator(Family::kThresholds, {}); }

ClosureOperator ClosureOperator::rectangles() { return ClosureOperator(Family::kRectangles, {}); }

ClosureOperator ClosureOperator::finite_class_unchecked(std::vector<Hypothesis> hypotheses) {
  if (hypotheses.empty()) throw ArgumentError("finite class must be nonempty");
  std::size_t n = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    const auto* f = hypotheses[i].get_if<FiniteLabeling>();
    if (!f) throw ArgumentError("finite class members must be FiniteLabeling hypotheses");
    if (i == 0) n = f->labels.size();
    if (f->labels.size() != n) throw ArgumentError("finite class members must share one domain");
  }
  ClosureOperator op(Family::kFiniteClass, std::move(hypotheses));
  op.domain_size_ = n;
  return op;
}

ClosureOperator ClosureOperator::finite_class(std::vector<Hypothesis> hypotheses) {
  ClosureOperator op = finite_class_unchecked(std::move(hypotheses));
  std::vector<std::vector<Label>> members;
  for (const auto& h : op.hypotheses_) members.push_back(h.get_if<FiniteLabeling>()->labels);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      std::vector<Label> meet(op.domain_size_);
      for (std::size_t k = 0; k < meet.size(); ++k) meet[k] = members[i][k] & members[j][k];
      if (std::find(members.begin(), members.end(), meet) == members.end()) {
        throw ArgumentError("finite class is not closed under intersection (members " +
                            std::to_string(i) + " and " + std::to_string(j) + ")");
      }
    }
  }
  return op;
}

Hypothesis ClosureOperator::close(const std::vector<Point>& positives) const {
  switch (family_) {
    case Family::kThresholds: {
      if (positives.empty()) return Hypothesis::threshold(1.0);
      double t = positives.front()[0];
      for (const auto& p : positives) t = std::min(t, p[0]);
      return Hypothesis::threshold(t);
    }
    case Family::kRectangles: {
      if (positives.empty()) return Hypothesis::constant_zero();
      std::vector<double> lo = positives.front().vec(), hi = lo;
      for (const auto& p : positives) {
        if (p.dim() != lo.size()) throw ArgumentError("rectangle closure: mixed dimensions");
        for (std::size_t i = 0; i < lo.size(); ++i) {
          lo[i] = std::min(lo[i], p[i]);
          hi[i] = std::max(hi[i], p[i]);
        }
      }
      return Hypothesis::rectangle(std::move(lo), std::move(hi));
    }
    case Family::kFiniteClass: {
      // Intersection of all members containing the points; an empty
      // intersection family leaves the whole domain.
      std::vector<Label> meet(domain_size_, 1);
      for (const auto& h : hypotheses_) {
        bool contains = std::all_of(positives.begin(), positives.end(),
                                    [&](const Point& p) { return h.predict(p) == 1; });
        if (!contains) continue;
        const auto& labels = h.get_if<FiniteLabeling>()->labels;
        for (std::size_t k = 0; k < meet.size(); ++k) meet[k] &= labels[k];
      }
      return Hypothesis::finite_labeling(std::move(meet));
    }
  }
  throw InvariantViolation("unknown closure family");
}

Hypothesis closure_learn(const Sample& sample, const ClosureOperator& op) {
  std::vector<Point> positives;
  for (const auto& ex : sample) {
    if (ex.label == 1) positives.push_back(ex.point);
  }
  Hypothesis h = op.close(positives);
  for (const auto& ex : sample) {
    if (ex.label == 0 && h.predict(ex.point) == 1) {
      throw InconsistentSample("negative example " + ex.point.to_string() +
                               " lies inside the closure of the positives");
    }
  }
  return h;
}

bool in_improvement_region(const Point& x, const LossSetting& s) {
  if (s.h.predict(x) == 1) return false;
  return find_reachable(x, s.delta, s.space, {{&s.h, 1}, {&s.f_star, 1}}, s.opts).has_value();
}

namespace {

bool rect_inside(const Rectangle& inner, const Hypothesis& outer) {
  if (outer.get_if<ConstantOne>()) return true;
  const auto* r = outer.get_if<Rectangle>();
  if (!r || r->lo.size() != inner.lo.size()) return false;
  for (std::size_t i = 0; i < inner.lo.size(); ++i) {
    if (inner.lo[i] < r->lo[i] || inner.hi[i] > r->hi[i]) return false;
  }
  return true;
}

std::optional<double> ir_closed_form(const LossSetting& s, const DistributionSpec& dist) {
  if (const auto* t = s.h.get_if<Threshold>()) {
    const auto* ball = s.delta.get_if<IntervalBall>();
    const auto* u = dist.get_if<UniformInterval>();
    const auto* ft = s.f_star.get_if<Threshold>();
    if (!ball || !u || !ft || u->lo != 0.0 || u->hi != 1.0) return std::nullopt;
    double start = std::max(t->t, ft->t);  // first point positive under both
    if (start > 1.0) return 0.0;
    return std::max(0.0, std::min(t->t, 1.0) - std::max(start - ball->r, 0.0));
  }
  if (const auto* rect = s.h.get_if<Rectangle>()) {
    const auto* ball = s.delta.get_if<LinfBall>();
    const auto* u = dist.get_if<UniformBox>();
    if (!ball || !u || u->d != 2 || rect->lo.size() != 2 || !rect_inside(*rect, s.f_star)) {
      return std::nullopt;
    }
    double outer = 1.0, inner = 1.0;
    for (std::size_t i = 0; i < 2; ++i) {
      outer *= std::min(1.0, rect->hi[i] + ball->r) - std::max(0.0, rect->lo[i] - ball->r);
      inner *= rect->hi[i] - rect->lo[i];
    }
    return outer - inner;
  }
  return std::nullopt;
}

}  // namespace

ImprovementRegionReport improvement_region_mass(const LossSetting& s, const DistributionSpec& dist,
                                                std::size_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) throw ArgumentError("improvement_region_mass needs n_samples >= 1");
  Rng rng(seed);
  std::vector<double> hits(n_samples);
  for (auto& v : hits) v = in_improvement_region(dist.sample(rng), s);
  Estimate e = estimate_from(hits);
  return {e.mean, ir_closed_form(s, dist), e.std_error};
}

Hypothesis learn_singleton_positive(const Sample& sample) {
  for (const auto& ex : sample) {
    if (ex.label == 1) return Hypothesis::singleton_positive(ex.point);
  }
  return Hypothesis::constant_zero();
}

FeasibilityResult find_consistent_direction(const Sample& sample, std::uint64_t seed,
                                            std::size_t cap) {
  if (sample.empty()) throw ArgumentError("feasibility needs a nonempty sample");
  const std::size_t d = sample.front().point.dim();
  const std::size_t m = sample.size();
  std::vector<double> w(d, 0.0);
  for (const auto& ex : sample) {
    if (ex.point.dim() != d) throw ArgumentError("sample points must share one dimension");
    double s = ex.label ? 1.0 : -1.0;
    for (std::size_t i = 0; i < d; ++i) w[i] += s * ex.point[i];
  }
  if (norm2(w) == 0.0) w[0] = 1.0;

  auto margin = [&](std::size_t k) {
    double s = sample[k].label ? 1.0 : -1.0;
    return s * dot(w, sample[k].point.coords());
  };

  Rng rng(seed);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::size_t updates = 0;
  while (true) {
    for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
    bool clean = true;
    for (std::size_t k : order) {
      if (margin(k) > 0.0) continue;
      clean = false;
      if (updates == cap) {
        std::size_t residual = 0;
        for (std::size_t j = 0; j < m; ++j) residual += margin(j) <= 0.0;
        throw NonSeparable("no consistent homogeneous halfspace found within " +
                               std::to_string(cap) + " updates (" + std::to_string(residual) +
                               " constraints still violated)",
                           updates, residual);
      }
      double s = sample[k].label ? 1.0 : -1.0;
      for (std::size_t i = 0; i < d; ++i) w[i] += s * sample[k].point[i];
      ++updates;
    }
    if (clean) break;
  }
  return {normalized(w), updates};
}

Hypothesis learn_halfspace_shifted(const Sample& sample, double r, std::uint64_t seed) {
  if (!(r > 0 && r < std::acos(0.0))) throw ArgumentError("shift radius must lie in (0, pi/2)");
  FeasibilityResult fr = find_consistent_direction(sample, seed);
  return Hypothesis::affine_halfspace(fr.w, std::sin(r / 2));
}

std::vector<double> nnls(const std::vector<std::vector<double>>& cols,
                         const std::vector<double>& b) {
  const Eigen::Index n = static_cast<Eigen::Index>(cols.size());
  const Eigen::Index d = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd A(d, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (static_cast<Eigen::Index>(cols[j].size()) != d) throw ArgumentError("nnls: ragged columns");
    for (Eigen::Index i = 0; i < d; ++i) A(i, j) = cols[j][i];
  }
  Eigen::VectorXd bv = Eigen::Map<const Eigen::VectorXd>(b.data(), d);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  const double tol = 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff()) * std::max<Eigen::Index>(n, 1);

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    Eigen::MatrixXd Ap(d, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Ap.col(k) = A.col(idx[k]);
    Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(bv);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(k);
    return z;
  };

  for (Eigen::Index outer = 0; outer < 3 * n + 10; ++outer) {
    Eigen::VectorXd grad = A.transpose() * (bv - A * x);
    Eigen::Index best = -1;
    double best_val = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && grad(j) > best_val) {
        best_val = grad(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    for (Eigen::Index inner = 0; inner < 3 * n + 10; ++inner) {
      Eigen::VectorXd z = solve_passive();
      bool positive = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) positive = false;
      }
      if (positive) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return std::vector<double>(x.data(), x.data() + n);
}

Label pos_agreement_member(const Point& x, const Sample& sample) {
  find_consistent_direction(sample);  // realizability check; throws NonSeparable
  std::vector<std::vector<double>> cols;
  for (const auto& ex : sample) {
    std::vector<double> c = ex.point.vec();
    if (!ex.label) {
      for (double& v : c) v = -v;
    }
    cols.push_back(std::move(c));
  }
  if (x.dim() != sample.front().point.dim()) throw ArgumentError("probe dimension mismatch");
  std::vector<double> lam = nnls(cols, x.vec());
  std::vector<double> fit(x.dim(), 0.0);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < fit.size(); ++i) fit[i] += lam[j] * cols[j][i];
  }
  double res = 0.0;
  for (std::size_t i = 0; i < fit.size(); ++i) res += (fit[i] - x[i]) * (fit[i] - x[i]);
  return std::sqrt(res) <= 1e-9 * std::max(1.0, norm2(x.coords()));
}

}  // namespace improvelearn
