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

#include "improvelearn/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "improvelearn/errors.hpp"
#include "overloaded.hpp"

namespace improvelearn {

InstanceSpace InstanceSpace::line(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw ArgumentError("line instance space needs finite lo < hi");
  }
  return InstanceSpace(LineSpace{lo, hi});
}

InstanceSpace InstanceSpace::unit_box(std::size_t d) {
  if (d == 0) throw ArgumentError("box dimension must be >= 1");
  return InstanceSpace(BoxSpace{d});
}

InstanceSpace InstanceSpace::sphere(std::size_t d) {
  if (d < 2) throw ArgumentError("sphere dimension must be >= 2");
  return InstanceSpace(SphereSpace{d});
}

InstanceSpace InstanceSpace::nodes(std::size_t n) { return InstanceSpace(NodeSpace{n}); }

bool InstanceSpace::contains(const Point& x) const {
  return std::visit(
      Overloaded{
          [&](const LineSpace& s) { return x.dim() == 1 && x[0] >= s.lo && x[0] <= s.hi; },
          [&](const BoxSpace& s) {
            if (x.dim() != s.d) return false;
            for (double c : x.coords()) {
              if (c < 0.0 || c > 1.0) return false;
            }
            return true;
          },
          [&](const SphereSpace& s) {
            return x.dim() == s.d && std::abs(norm2(x.coords()) - 1.0) <= kSphereTol;
          },
          [&](const NodeSpace& s) {
            return x.dim() == 1 && x[0] >= 0 && x[0] == std::floor(x[0]) &&
                   x[0] < static_cast<double>(s.n);
          },
      },
      v_);
}

std::string InstanceSpace::kind() const {
  static const char* const kNames[] = {"Line", "Box", "Sphere", "Nodes"};
  return kNames[v_.index()];
}

DistributionSpec DistributionSpec::uniform_interval(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw ArgumentError("uniform interval needs finite lo < hi");
  }
  return DistributionSpec(UniformInterval{lo, hi});
}

DistributionSpec DistributionSpec::uniform_box(std::size_t d) {
  if (d == 0) throw ArgumentError("box dimension must be >= 1");
  return DistributionSpec(UniformBox{d});
}

DistributionSpec DistributionSpec::uniform_sphere(std::size_t d) {
  if (d < 2) throw ArgumentError("sphere dimension must be >= 2");
  return DistributionSpec(UniformSphere{d});
}

DistributionSpec DistributionSpec::uniform_nodes(std::size_t n) {
  if (n == 0) throw ArgumentError("uniform node distribution needs n >= 1");
  return DistributionSpec(UniformNodes{n});
}

DistributionSpec DistributionSpec::finite_discrete(std::vector<Point> points,
                                                   std::vector<double> weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw ArgumentError("finite distribution needs one weight per point");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0) throw ArgumentError("weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("weights must sum to 1");
  DistributionSpec spec(FiniteDiscrete{std::move(points), weights});
  double acc = 0.0;
  for (double w : weights) spec.cumulative_.push_back(acc += w);
  return spec;
}

DistributionSpec DistributionSpec::gaussian_blobs(std::vector<double> center0,
                                                  std::vector<double> center1, double scale) {
  if (center0.empty() || center0.size() != center1.size()) {
    throw ArgumentError("blob centers must be nonempty and of equal dimension");
  }
  if (!(scale > 0)) throw ArgumentError("blob scale must be positive");
  return DistributionSpec(GaussianBlobs{std::move(center0), std::move(center1), scale});
}

std::vector<double> sample_unit_vector(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double n2;
  do {
    n2 = 0.0;
    for (double& c : v) {
      c = standard_normal(rng);
      n2 += c * c;
    }
  } while (n2 == 0.0);
  double n = std::sqrt(n2);
  for (double& c : v) c /= n;
  return v;
}

Point DistributionSpec::sample(Rng& rng) const {
  return std::visit(
      Overloaded{
          [&](const UniformInterval& u) { return Point::scalar(uniform(rng, u.lo, u.hi)); },
          [&](const UniformBox& u) {
            std::vector<double> c(u.d);
            for (double& v : c) v = uniform01(rng);
            return Point(std::move(c));
          },
          [&](const UniformSphere& u) { return Point(sample_unit_vector(rng, u.d)); },
          [&](const UniformNodes& u) { return Point::node(uniform_index(rng, u.n)); },
          [&](const FiniteDiscrete& f) {
            double u = uniform01(rng);
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
            std::size_t i = std::min<std::size_t>(it - cumulative_.begin(), f.points.size() - 1);
            // Skip zero-weight atoms that upper_bound can land on at the tail.
            while (i > 0 && f.weights[i] == 0.0) --i;
            return f.points[i];
          },
          [&](const GaussianBlobs& g) {
            const auto& c = uniform01(rng) < 0.5 ? g.center0 : g.center1;
            std::vector<double> x(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] + g.scale * standard_normal(rng);
            return Point(std::move(x));
          },
      },
      v_);
}

std::vector<Point> DistributionSpec::sample_n(Rng& rng, std::size_t n) const {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
  return out;
}

bool DistributionSpec::finite_support() const {
  return std::holds_alternative<UniformNodes>(v_) || std::holds_alternative<FiniteDiscrete>(v_);
}

std::vector<std::pair<Point, double>> DistributionSpec::support() const {
  std::vector<std::pair<Point, double>> out;
  if (const auto* u = get_if<UniformNodes>()) {
    for (std::size_t i = 0; i < u->n; ++i) out.emplace_back(Point::node(i), 1.0 / u->n);
  } else if (const auto* f = get_if<FiniteDiscrete>()) {
    for (std::size_t i = 0; i < f->points.size(); ++i) out.emplace_back(f->points[i], f->weights[i]);
  } else {
    throw EvaluationUnsupported("distribution does not have finite support");
  }
  return out;
}

}  // namespace improvelearn
