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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace improvelearn {

/// Absolute tolerance for geometric comparisons that cannot be made exactly.
inline constexpr double kGeomTol = 1e-12;
/// Tolerance on the unit norm of sphere-typed points.
inline constexpr double kSphereTol = 1e-9;

using Label = int;

/// A point of the instance space. Finite domains (graphs, tables) identify a
/// point by a one-dimensional coordinate holding its integer id.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point scalar(double v) { return Point(std::vector<double>{v}); }
  static Point node(std::size_t id);
  /// Throws ArgumentError unless the coordinates have unit Euclidean norm.
  static Point on_sphere(std::vector<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& vec() const { return coords_; }

  /// Id of a finite-domain point; throws if the point is not a valid id.
  std::size_t node_id() const;

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

struct LabeledExample {
  Point point;
  Label label = 0;

  LabeledExample() = default;
  LabeledExample(Point p, Label y);
};

using Sample = std::vector<LabeledExample>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
std::vector<double> normalized(std::span<const double> a);

}  // namespace improvelearn
