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

#include "improvelearn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "improvelearn/errors.hpp"

namespace improvelearn {

LossKind parse_loss_kind(const std::string& name) {
  if (name == "improvement") return LossKind::kImprovement;
  if (name == "strategic") return LossKind::kStrategic;
  if (name == "enabling") return LossKind::kEnabling;
  throw ArgumentError("unknown loss kind '" + name + "'");
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kImprovement:
      return "improvement";
    case LossKind::kStrategic:
      return "strategic";
    case LossKind::kEnabling:
      return "enabling";
  }
  return "?";
}

ReactionOutcome improvement_loss(const Point& x, const LossSetting& s) {
  ReactionOutcome out;
  Label fx = s.f_star.predict(x);
  if (s.h.predict(x) == 1) {
    out.loss_bit = fx == 0;
    return out;
  }
  if (!find_reachable(x, s.delta, s.space, {{&s.h, 1}}, s.opts)) {
    out.loss_bit = fx == 1;
    return out;
  }
  out.moved = true;
  out.witness = find_reachable(x, s.delta, s.space, {{&s.h, 1}, {&s.f_star, 0}}, s.opts);
  out.loss_bit = out.witness.has_value();
  return out;
}

Label strategic_loss(const Point& x, const LossSetting& s) {
  Label fx = s.f_star.predict(x);
  if (s.h.predict(x) == 1) return fx == 0;
  if (!find_reachable(x, s.delta, s.space, {{&s.h, 1}}, s.opts)) return fx == 1;
  return fx == 0;
}

Label enabling_loss(const Point& x, const LossSetting& s) {
  if (!s.space.finite()) {
    throw EvaluationUnsupported("enabling loss is only defined on finite instance spaces (got " +
                                s.space.kind() + ")");
  }
  if (s.f_star.predict(x) == 1) return 0;
  bool f_stays = !find_reachable(x, s.delta, s.space, {{&s.f_star, 1}}, s.opts);
  bool h_stays =
      s.h.predict(x) == 1 || !find_reachable(x, s.delta, s.space, {{&s.h, 1}}, s.opts);
  return f_stays != h_stays;
}

Label pointwise_loss(LossKind kind, const Point& x, const LossSetting& s) {
  switch (kind) {
    case LossKind::kImprovement:
      return improvement_loss(x, s).loss_bit;
    case LossKind::kStrategic:
      return strategic_loss(x, s);
    case LossKind::kEnabling:
      return enabling_loss(x, s);
  }
  return 0;
}

Estimate estimate_from(const std::vector<double>& values) {
  Estimate e;
  e.n = values.size();
  if (e.n == 0) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
  }
  return e;
}

Estimate population_loss_mc(const LossSetting& s, const DistributionSpec& dist,
                            std::size_t n_samples, LossKind kind, std::uint64_t seed) {
  if (n_samples == 0) throw ArgumentError("population_loss_mc needs n_samples >= 1");
  Rng rng(seed);
  std::vector<double> losses(n_samples);
  for (auto& l : losses) l = pointwise_loss(kind, dist.sample(rng), s);
  return estimate_from(losses);
}

double population_loss_exact(const LossSetting& s, const DistributionSpec& dist, LossKind kind) {
  double total = 0.0;
  for (const auto& [x, w] : dist.support()) {
    if (w > 0) total += w * pointwise_loss(kind, x, s);
  }
  return total;
}

namespace {

void collect_region_endpoints(const ImprovementMap& m, std::vector<double>& out) {
  if (const auto* pw = m.get_if<PiecewiseRegion>()) {
    for (const auto& p : pw->pieces) {
      auto e = p.region.endpoints();
      out.insert(out.end(), e.begin(), e.end());
      collect_region_endpoints(*p.map, out);
    }
  }
}

}  // namespace

double population_loss_uniform_line(const LossSetting& s, LossKind kind) {
  const auto* line = s.space.get_if<LineSpace>();
  if (!line) throw EvaluationUnsupported("exact uniform-line loss needs a line instance space");
  auto hr = line_region(s.h);
  auto fr = line_region(s.f_star);
  if (!hr || !fr) {
    throw EvaluationUnsupported("exact uniform-line loss needs one-dimensional hypotheses, got " +
                                s.h.kind() + " and " + s.f_star.kind());
  }
  std::vector<double> ends = {line->lo, line->hi};
  for (double e : hr->endpoints()) ends.push_back(e);
  for (double e : fr->endpoints()) ends.push_back(e);
  collect_region_endpoints(s.delta, ends);
  std::vector<double> cuts;
  for (double e : ends) {
    cuts.push_back(e);
    for (double r : s.delta.radii()) {
      cuts.push_back(e - r);
      cuts.push_back(e + r);
    }
  }
  std::vector<double> inside;
  for (double c : cuts) {
    if (c >= line->lo && c <= line->hi) inside.push_back(c);
  }
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < inside.size(); ++i) {
    double a = inside[i], b = inside[i + 1];
    double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) continue;
    total += (b - a) * pointwise_loss(kind, Point::scalar(mid), s);
  }
  return total / (line->hi - line->lo);
}

double halfspace_disagreement_mass(const std::vector<double>& w1, const std::vector<double>& w2) {
  double c = std::clamp(dot(w1, w2) / (norm2(w1) * norm2(w2)), -1.0, 1.0);
  return std::acos(c) / std::numbers::pi;
}

}  // namespace improvelearn
