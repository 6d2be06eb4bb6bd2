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

#include "improvelearn/point.hpp"

#include <cmath>
#include <cstdio>

#include "improvelearn/errors.hpp"

namespace improvelearn {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ArgumentError("point must have dimension >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw ArgumentError("point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::node(std::size_t id) {
  return Point(std::vector<double>{static_cast<double>(id)});
}

Point Point::on_sphere(std::vector<double> coords) {
  Point p(std::move(coords));
  if (std::abs(norm2(p.coords()) - 1.0) > kSphereTol) {
    throw ArgumentError("sphere point must have unit norm, got " +
                        std::to_string(norm2(p.coords())));
  }
  return p;
}

std::size_t Point::node_id() const {
  if (coords_.size() != 1 || coords_[0] < 0 ||
      coords_[0] != std::floor(coords_[0])) {
    throw ArgumentError("point " + to_string() + " is not a finite-domain id");
  }
  return static_cast<std::size_t>(coords_[0]);
}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

LabeledExample::LabeledExample(Point p, Label y) : point(std::move(p)), label(y) {
  if (y != 0 && y != 1) throw ArgumentError("label must be 0 or 1");
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("dimension mismatch in dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> normalized(std::span<const double> a) {
  double n = norm2(a);
  if (n == 0.0) throw ArgumentError("cannot normalize the zero vector");
  std::vector<double> out(a.begin(), a.end());
  for (double& v : out) v /= n;
  return out;
}

}  // namespace improvelearn
