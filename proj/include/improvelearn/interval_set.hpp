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

#include <optional>
#include <string>
#include <vector>

namespace improvelearn {

/// Interval on the extended real line with per-endpoint open/closed flags.
/// Infinite endpoints are always treated as open.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval closed_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval open_closed(double lo, double hi) { return {lo, hi, false, true}; }
  static Interval point(double v) { return {v, v, true, true}; }

  bool empty() const;
  bool contains(double x) const;
  double length() const { return empty() ? 0.0 : hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Finite union of disjoint intervals kept sorted and merged, with exact
/// endpoint semantics (no tolerance).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet all();
  static IntervalSet of(Interval iv) { return IntervalSet({iv}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(double x) const;
  double measure() const;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet complement() const;
  IntervalSet unite(const IntervalSet& other) const;

  /// Some member of the set, preferring interior midpoints of bounded parts.
  std::optional<double> any_point() const;

  /// Finite endpoints of all parts.
  std::vector<double> endpoints() const;

  std::string to_string() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> parts_;
};

}  // namespace improvelearn
