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

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "improvelearn/graph.hpp"
#include "improvelearn/interval_set.hpp"
#include "improvelearn/point.hpp"

namespace improvelearn {

class ImprovementMap;

/// Δ(x) = [x - r, x + r] on the line (open interval when `open`).
struct IntervalBall {
  double r = 0.0;
  bool open = false;
};

/// Closed l-infinity ball of radius r.
struct LinfBall {
  double r = 0.0;
};

/// l-infinity ball that only moves the coordinates listed in `mask`.
struct MaskedLinfBall {
  double r = 0.0;
  std::vector<std::size_t> mask;
};

/// Spherical cap {y : angle(x, y) <= r}, r in (0, pi).
struct AngularBall {
  double r = 0.0;
};

/// Neighbors of x in the rho-th power of a graph.
struct GraphNeighborhood {
  std::shared_ptr<const Graph> power;
  int rho = 1;
};

struct WholeSpace {};

/// Explicit reachable ids per node id; ids absent from the table reach nothing.
struct FiniteTable {
  std::map<NodeId, std::vector<NodeId>> table;
};

/// Picks a sub-map by the region (on coordinate 0) containing x.
struct PiecewiseRegion {
  struct Piece {
    IntervalSet region;
    std::shared_ptr<const ImprovementMap> map;
  };
  std::vector<Piece> pieces;
};

class ImprovementMap {
 public:
  using Variant = std::variant<IntervalBall, LinfBall, MaskedLinfBall, AngularBall,
                               GraphNeighborhood, WholeSpace, FiniteTable,
                               PiecewiseRegion>;

  ImprovementMap() : v_(WholeSpace{}) {}

  static ImprovementMap interval_ball(double r, bool open = false);
  static ImprovementMap linf_ball(double r);
  static ImprovementMap masked_linf_ball(double r, std::vector<std::size_t> mask);
  static ImprovementMap angular_ball(double r);
  /// Computes the rho-th graph power once, at construction.
  static ImprovementMap graph_neighborhood(const Graph& g, int rho = 1);
  static ImprovementMap whole_space() { return ImprovementMap(WholeSpace{}); }
  static ImprovementMap finite_table(std::map<NodeId, std::vector<NodeId>> table);
  static ImprovementMap piecewise(std::vector<std::pair<IntervalSet, ImprovementMap>> pieces);

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// Resolves PiecewiseRegion to the sub-map governing x (recursively);
  /// other variants return themselves.
  const ImprovementMap& resolve(const Point& x) const;

  /// Radii of every ball-type component, used for breakpoint analysis.
  std::vector<double> radii() const;

  std::string kind() const;
  std::string to_string() const;

 private:
  explicit ImprovementMap(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace improvelearn
