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

#include "improvelearn/hypothesis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "improvelearn/errors.hpp"
#include "overloaded.hpp"

namespace improvelearn {

namespace {

std::vector<double> checked_unit(std::vector<double> w) {
  if (w.empty()) throw ArgumentError("halfspace normal must be nonempty");
  for (double v : w) {
    if (!std::isfinite(v)) throw ArgumentError("halfspace normal must be finite");
  }
  if (std::abs(norm2(w) - 1.0) > kSphereTol) {
    throw ArgumentError("halfspace normal must have unit norm");
  }
  return w;
}

void check_dim(const Point& x, std::size_t d, const char* what) {
  if (x.dim() != d) {
    throw ArgumentError(std::string(what) + " expects dimension " + std::to_string(d) +
                        ", got " + std::to_string(x.dim()));
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_vec(const std::vector<double>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out + ")";
}

}  // namespace

Hypothesis Hypothesis::threshold(double t) {
  if (!std::isfinite(t)) throw ArgumentError("threshold must be finite");
  return Hypothesis(Threshold{t});
}

Hypothesis Hypothesis::rectangle(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) {
    throw ArgumentError("rectangle corners must be nonempty and of equal dimension");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw ArgumentError("rectangle corners must be finite");
    }
    if (lo[i] > hi[i]) throw ArgumentError("rectangle needs lo <= hi in every coordinate");
  }
  return Hypothesis(Rectangle{std::move(lo), std::move(hi)});
}

Hypothesis Hypothesis::homogeneous_halfspace(std::vector<double> w) {
  return Hypothesis(HomogeneousHalfspace{checked_unit(std::move(w))});
}

Hypothesis Hypothesis::affine_halfspace(std::vector<double> w, double offset) {
  if (!std::isfinite(offset)) throw ArgumentError("halfspace offset must be finite");
  return Hypothesis(AffineHalfspace{checked_unit(std::move(w)), offset});
}

Hypothesis Hypothesis::union_of_intervals(std::vector<Interval> parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Interval& iv = parts[i];
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.empty()) {
      throw ArgumentError("union of intervals: empty or invalid interval");
    }
    if (i > 0) {
      const Interval& prev = parts[i - 1];
      bool disjoint = prev.hi < iv.lo ||
                      (prev.hi == iv.lo && !(prev.hi_closed && iv.lo_closed));
      if (!disjoint) {
        throw ArgumentError("union of intervals must be sorted and pairwise disjoint");
      }
    }
  }
  return Hypothesis(UnionOfIntervals{IntervalSet(std::move(parts))});
}

Hypothesis Hypothesis::finite_labeling(std::vector<Label> labels) {
  for (Label y : labels) {
    if (y != 0 && y != 1) throw ArgumentError("finite labeling entries must be 0 or 1");
  }
  return Hypothesis(FiniteLabeling{std::move(labels)});
}

Hypothesis Hypothesis::singleton_positive(Point p) {
  if (p.dim() == 0) throw ArgumentError("singleton point must be nonempty");
  return Hypothesis(SingletonPositive{std::move(p)});
}

Label Hypothesis::predict(const Point& x) const {
  return std::visit(
      Overloaded{
          [&](const Threshold& h) -> Label {
            check_dim(x, 1, "Threshold");
            return x[0] >= h.t;
          },
          [&](const Rectangle& h) -> Label {
            check_dim(x, h.lo.size(), "Rectangle");
            for (std::size_t i = 0; i < h.lo.size(); ++i) {
              if (x[i] < h.lo[i] || x[i] > h.hi[i]) return 0;
            }
            return 1;
          },
          [&](const HomogeneousHalfspace& h) -> Label {
            check_dim(x, h.w.size(), "HomogeneousHalfspace");
            return dot(h.w, x.coords()) >= 0.0;
          },
          [&](const AffineHalfspace& h) -> Label {
            check_dim(x, h.w.size(), "AffineHalfspace");
            return dot(h.w, x.coords()) >= h.offset;
          },
          [&](const UnionOfIntervals& h) -> Label {
            check_dim(x, 1, "UnionOfIntervals");
            return h.set.contains(x[0]);
          },
          [&](const FiniteLabeling& h) -> Label {
            std::size_t id = x.node_id();
            if (id >= h.labels.size()) {
              throw ArgumentError("node id " + std::to_string(id) +
                                  " outside the labeling's domain");
            }
            return h.labels[id];
          },
          [&](const SingletonPositive& h) -> Label { return x == h.p; },
          [](const ConstantZero&) -> Label { return 0; },
          [](const ConstantOne&) -> Label { return 1; },
      },
      v_);
}

std::string Hypothesis::kind() const {
  static const char* const kNames[] = {"Threshold",       "Rectangle",
                                       "HomogeneousHalfspace", "AffineHalfspace",
                                       "UnionOfIntervals", "FiniteLabeling",
                                       "SingletonPositive", "ConstantZero",
                                       "ConstantOne"};
  return kNames[v_.index()];
}

std::string Hypothesis::to_string() const {
  return std::visit(
      Overloaded{
          [](const Threshold& h) { return "Threshold(" + fmt(h.t) + ")"; },
          [](const Rectangle& h) {
            return "Rectangle(" + fmt_vec(h.lo) + ", " + fmt_vec(h.hi) + ")";
          },
          [](const HomogeneousHalfspace& h) {
            return "HomogeneousHalfspace(" + fmt_vec(h.w) + ")";
          },
          [](const AffineHalfspace& h) {
            return "AffineHalfspace(" + fmt_vec(h.w) + ", " + fmt(h.offset) + ")";
          },
          [](const UnionOfIntervals& h) {
            return "UnionOfIntervals(" + h.set.to_string() + ")";
          },
          [](const FiniteLabeling& h) {
            std::string s = "FiniteLabeling(";
            for (Label y : h.labels) s += static_cast<char>('0' + y);
            return s + ")";
          },
          [](const SingletonPositive& h) {
            return "SingletonPositive" + h.p.to_string();
          },
          [](const ConstantZero&) { return std::string("ConstantZero"); },
          [](const ConstantOne&) { return std::string("ConstantOne"); },
      },
      v_);
}

std::optional<IntervalSet> line_region(const Hypothesis& h) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      Overloaded{
          [&](const Threshold& t) -> std::optional<IntervalSet> {
            return IntervalSet::of(Interval::closed_open(t.t, inf));
          },
          [&](const Rectangle& r) -> std::optional<IntervalSet> {
            if (r.lo.size() != 1) return std::nullopt;
            return IntervalSet::of(Interval::closed(r.lo[0], r.hi[0]));
          },
          [&](const HomogeneousHalfspace& s) -> std::optional<IntervalSet> {
            if (s.w.size() != 1) return std::nullopt;
            return s.w[0] > 0 ? IntervalSet::of(Interval::closed_open(0.0, inf))
                              : IntervalSet::of(Interval::open_closed(-inf, 0.0));
          },
          [&](const AffineHalfspace& s) -> std::optional<IntervalSet> {
            if (s.w.size() != 1) return std::nullopt;
            double b = s.offset / s.w[0];
            return s.w[0] > 0 ? IntervalSet::of(Interval::closed_open(b, inf))
                              : IntervalSet::of(Interval::open_closed(-inf, b));
          },
          [&](const UnionOfIntervals& u) -> std::optional<IntervalSet> { return u.set; },
          [&](const FiniteLabeling&) -> std::optional<IntervalSet> { return std::nullopt; },
          [&](const SingletonPositive& s) -> std::optional<IntervalSet> {
            if (s.p.dim() != 1) return std::nullopt;
            return IntervalSet::of(Interval::point(s.p[0]));
          },
          [&](const ConstantZero&) -> std::optional<IntervalSet> { return IntervalSet(); },
          [&](const ConstantOne&) -> std::optional<IntervalSet> {
            return IntervalSet::all();
          },
      },
      h.variant());
}

}  // namespace improvelearn
