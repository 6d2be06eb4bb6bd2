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

#include "improvelearn/point.hpp"

namespace improvelearn {

struct LineSpace {
  double lo = 0.0;
  double hi = 1.0;
};
/// [0, 1]^d.
struct BoxSpace {
  std::size_t d = 2;
};
/// Unit sphere in R^d.
struct SphereSpace {
  std::size_t d = 3;
};
/// Node ids 0..n-1, each a one-coordinate point.
struct NodeSpace {
  std::size_t n = 0;
};

class InstanceSpace {
 public:
  using Variant = std::variant<LineSpace, BoxSpace, SphereSpace, NodeSpace>;

  InstanceSpace() : v_(LineSpace{}) {}

  static InstanceSpace line(double lo = 0.0, double hi = 1.0);
  static InstanceSpace unit_box(std::size_t d);
  static InstanceSpace sphere(std::size_t d);
  static InstanceSpace nodes(std::size_t n);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  bool contains(const Point& x) const;
  bool finite() const { return std::holds_alternative<NodeSpace>(v_); }
  std::string kind() const;

 private:
  explicit InstanceSpace(Variant v) : v_(v) {}
  Variant v_;
};

}  // namespace improvelearn
