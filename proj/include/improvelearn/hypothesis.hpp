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

#include <string>
#include <variant>
#include <vector>

#include "improvelearn/interval_set.hpp"
#include "improvelearn/point.hpp"

namespace improvelearn {

/// Positive iff x >= t on the line.
struct Threshold {
  double t = 0.0;
};

/// Closed axis-aligned box [lo, hi]. lo == hi is allowed.
struct Rectangle {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Positive iff <w, x> >= 0, w unit.
struct HomogeneousHalfspace {
  std::vector<double> w;
};

/// Positive iff <w, x> >= offset, w unit.
struct AffineHalfspace {
  std::vector<double> w;
  double offset = 0.0;
};

struct UnionOfIntervals {
  IntervalSet set;
};

/// Explicit labels indexed by node id.
struct FiniteLabeling {
  std::vector<Label> labels;
};

struct SingletonPositive {
  Point p;
};

struct ConstantZero {};
struct ConstantOne {};

class Hypothesis {
 public:
  using Variant = std::variant<Threshold, Rectangle, HomogeneousHalfspace,
                               AffineHalfspace, UnionOfIntervals, FiniteLabeling,
                               SingletonPositive, ConstantZero, ConstantOne>;

  Hypothesis() : v_(ConstantZero{}) {}

  static Hypothesis threshold(double t);
  static Hypothesis rectangle(std::vector<double> lo, std::vector<double> hi);
  static Hypothesis homogeneous_halfspace(std::vector<double> w);
  static Hypothesis affine_halfspace(std::vector<double> w, double offset);
  /// Intervals must be nonempty, sorted and pairwise disjoint.
  static Hypothesis union_of_intervals(std::vector<Interval> parts);
  static Hypothesis finite_labeling(std::vector<Label> labels);
  static Hypothesis singleton_positive(Point p);
  static Hypothesis constant_zero() { return Hypothesis(ConstantZero{}); }
  static Hypothesis constant_one() { return Hypothesis(ConstantOne{}); }

  Label predict(const Point& x) const;
  Label operator()(const Point& x) const { return predict(x); }

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// Variant name, e.g. "Threshold".
  std::string kind() const;
  std::string to_string() const;

 private:
  explicit Hypothesis(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Positive region of a one-dimensional hypothesis as an interval set, or
/// nullopt if the variant has no line geometry.
std::optional<IntervalSet> line_region(const Hypothesis& h);

}  // namespace improvelearn
