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

#include <utility>
#include <variant>
#include <vector>

#include "improvelearn/instance_space.hpp"
#include "improvelearn/point.hpp"
#include "improvelearn/rng.hpp"

namespace improvelearn {

struct UniformInterval {
  double lo = 0.0;
  double hi = 1.0;
};
struct UniformBox {
  std::size_t d = 2;
};
struct UniformSphere {
  std::size_t d = 3;
};
struct UniformNodes {
  std::size_t n = 0;
};
struct FiniteDiscrete {
  std::vector<Point> points;
  std::vector<double> weights;
};
/// Equal mixture of N(center0, scale^2 I) and N(center1, scale^2 I).
struct GaussianBlobs {
  std::vector<double> center0;
  std::vector<double> center1;
  double scale = 1.0;
};

class DistributionSpec {
 public:
  using Variant = std::variant<UniformInterval, UniformBox, UniformSphere, UniformNodes,
                               FiniteDiscrete, GaussianBlobs>;

  static DistributionSpec uniform_interval(double lo = 0.0, double hi = 1.0);
  static DistributionSpec uniform_box(std::size_t d);
  static DistributionSpec uniform_sphere(std::size_t d);
  static DistributionSpec uniform_nodes(std::size_t n);
  /// Weights must be nonnegative and sum to 1 within 1e-12.
  static DistributionSpec finite_discrete(std::vector<Point> points, std::vector<double> weights);
  static DistributionSpec gaussian_blobs(std::vector<double> center0, std::vector<double> center1,
                                         double scale);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  Point sample(Rng& rng) const;
  std::vector<Point> sample_n(Rng& rng, std::size_t n) const;

  bool finite_support() const;
  /// (point, probability) pairs; throws EvaluationUnsupported for continuous laws.
  std::vector<std::pair<Point, double>> support() const;

 private:
  explicit DistributionSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
  std::vector<double> cumulative_;
};

/// Uniform direction on the unit sphere of R^d.
std::vector<double> sample_unit_vector(Rng& rng, std::size_t d);

}  // namespace improvelearn
