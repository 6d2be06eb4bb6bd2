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

#include "improvelearn/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace improvelearn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval canonical(Interval iv) {
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
  return iv;
}

Interval intersect_one(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo > b.lo) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  return out;
}

}  // namespace

bool Interval::empty() const {
  if (lo < hi) return false;
  return !(lo == hi && lo_closed && hi_closed && std::isfinite(lo));
}

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::vector<Interval> kept;
  kept.reserve(parts.size());
  for (Interval iv : parts) {
    iv = canonical(iv);
    if (!iv.empty()) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const Interval& iv : kept) {
    if (!parts_.empty()) {
      Interval& cur = parts_.back();
      bool joins = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
      if (joins) {
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    parts_.push_back(iv);
  }
}

IntervalSet IntervalSet::all() { return IntervalSet({Interval{-kInf, kInf, false, false}}); }

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [x](const Interval& iv) { return iv.contains(x); });
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const Interval& iv : parts_) total += iv.length();
  return total;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_) {
    for (const Interval& b : other.parts_) {
      Interval c = intersect_one(a, b);
      if (!c.empty()) out.push_back(c);
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> out;
  double prev = -kInf;
  bool prev_closed = false;  // closedness of the previous part's right end
  for (const Interval& iv : parts_) {
    out.push_back(Interval{prev, iv.lo, !prev_closed && std::isfinite(prev), !iv.lo_closed});
    prev = iv.hi;
    prev_closed = iv.hi_closed;
  }
  out.push_back(Interval{prev, kInf, !prev_closed && std::isfinite(prev), false});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all_parts = parts_;
  all_parts.insert(all_parts.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all_parts));
}

std::optional<double> IntervalSet::any_point() const {
  if (parts_.empty()) return std::nullopt;
  const Interval& iv = parts_.front();
  bool lo_fin = std::isfinite(iv.lo);
  bool hi_fin = std::isfinite(iv.hi);
  if (lo_fin && hi_fin) return iv.lo == iv.hi ? iv.lo : 0.5 * (iv.lo + iv.hi);
  if (lo_fin) return iv.lo_closed ? iv.lo : iv.lo + 1.0;
  if (hi_fin) return iv.hi_closed ? iv.hi : iv.hi - 1.0;
  return 0.0;
}

std::vector<double> IntervalSet::endpoints() const {
  std::vector<double> out;
  for (const Interval& iv : parts_) {
    if (std::isfinite(iv.lo)) out.push_back(iv.lo);
    if (std::isfinite(iv.hi)) out.push_back(iv.hi);
  }
  return out;
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& iv = parts_[i];
    std::snprintf(buf, sizeof buf, "%c%g, %g%c", iv.lo_closed ? '[' : '(', iv.lo, iv.hi,
                  iv.hi_closed ? ']' : ')');
    if (i) out += " U ";
    out += buf;
  }
  return out;
}

}  // namespace improvelearn
