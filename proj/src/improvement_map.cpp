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

#include "improvelearn/improvement_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "improvelearn/errors.hpp"
#include "overloaded.hpp"

namespace improvelearn {

namespace {

double checked_radius(double r) {
  if (!std::isfinite(r) || r < 0) throw ArgumentError("improvement radius must be finite and >= 0");
  return r;
}

}  // namespace

ImprovementMap ImprovementMap::interval_ball(double r, bool open) {
  return ImprovementMap(IntervalBall{checked_radius(r), open});
}

ImprovementMap ImprovementMap::linf_ball(double r) {
  return ImprovementMap(LinfBall{checked_radius(r)});
}

ImprovementMap ImprovementMap::masked_linf_ball(double r, std::vector<std::size_t> mask) {
  std::sort(mask.begin(), mask.end());
  mask.erase(std::unique(mask.begin(), mask.end()), mask.end());
  return ImprovementMap(MaskedLinfBall{checked_radius(r), std::move(mask)});
}

ImprovementMap ImprovementMap::angular_ball(double r) {
  if (!(r > 0 && r < std::numbers::pi)) throw ArgumentError("angular radius must lie in (0, pi)");
  return ImprovementMap(AngularBall{r});
}

ImprovementMap ImprovementMap::graph_neighborhood(const Graph& g, int rho) {
  if (rho < 1) throw ArgumentError("graph neighborhood radius must be >= 1");
  return ImprovementMap(
      GraphNeighborhood{std::make_shared<const Graph>(graph_power(g, rho)), rho});
}

ImprovementMap ImprovementMap::finite_table(std::map<NodeId, std::vector<NodeId>> table) {
  for (auto& [id, targets] : table) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  return ImprovementMap(FiniteTable{std::move(table)});
}

ImprovementMap ImprovementMap::piecewise(
    std::vector<std::pair<IntervalSet, ImprovementMap>> pieces) {
  PiecewiseRegion pw;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!pieces[i].first.intersect(pieces[j].first).empty()) {
        throw ArgumentError("piecewise improvement map regions overlap");
      }
    }
    pw.pieces.push_back({std::move(pieces[i].first),
                         std::make_shared<const ImprovementMap>(std::move(pieces[i].second))});
  }
  return ImprovementMap(std::move(pw));
}

const ImprovementMap& ImprovementMap::resolve(const Point& x) const {
  const auto* pw = get_if<PiecewiseRegion>();
  if (!pw) return *this;
  for (const auto& piece : pw->pieces) {
    if (piece.region.contains(x[0])) return piece.map->resolve(x);
  }
  throw ArgumentError("no piecewise region contains " + x.to_string());
}

std::vector<double> ImprovementMap::radii() const {
  return std::visit(Overloaded{
                        [](const IntervalBall& b) { return std::vector<double>{b.r}; },
                        [](const LinfBall& b) { return std::vector<double>{b.r}; },
                        [](const MaskedLinfBall& b) { return std::vector<double>{b.r}; },
                        [](const AngularBall& b) { return std::vector<double>{b.r}; },
                        [](const PiecewiseRegion& pw) {
                          std::vector<double> out;
                          for (const auto& p : pw.pieces) {
                            auto r = p.map->radii();
                            out.insert(out.end(), r.begin(), r.end());
                          }
                          return out;
                        },
                        [](const auto&) { return std::vector<double>{}; },
                    },
                    v_);
}

std::string ImprovementMap::kind() const {
  static const char* const kNames[] = {"IntervalBall", "LinfBall",          "MaskedLinfBall",
                                       "AngularBall",  "GraphNeighborhood", "WholeSpace",
                                       "FiniteTable",  "PiecewiseRegion"};
  return kNames[v_.index()];
}

std::string ImprovementMap::to_string() const {
  char buf[64];
  return std::visit(
      Overloaded{
          [&](const IntervalBall& b) {
            std::snprintf(buf, sizeof buf, "IntervalBall(%g%s)", b.r, b.open ? ", open" : "");
            return std::string(buf);
          },
          [&](const LinfBall& b) {
            std::snprintf(buf, sizeof buf, "LinfBall(%g)", b.r);
            return std::string(buf);
          },
          [&](const MaskedLinfBall& b) {
            std::snprintf(buf, sizeof buf, "MaskedLinfBall(%g, %zu coords)", b.r, b.mask.size());
            return std::string(buf);
          },
          [&](const AngularBall& b) {
            std::snprintf(buf, sizeof buf, "AngularBall(%g)", b.r);
            return std::string(buf);
          },
          [&](const GraphNeighborhood& g) {
            return "GraphNeighborhood(n=" + std::to_string(g.power->n()) +
                   ", rho=" + std::to_string(g.rho) + ")";
          },
          [](const WholeSpace&) { return std::string("WholeSpace"); },
          [](const FiniteTable& t) {
            return "FiniteTable(" + std::to_string(t.table.size()) + " entries)";
          },
          [](const PiecewiseRegion& pw) {
            std::string s = "PiecewiseRegion(";
            for (std::size_t i = 0; i < pw.pieces.size(); ++i) {
              if (i) s += "; ";
              s += pw.pieces[i].region.to_string() + " -> " + pw.pieces[i].map->to_string();
            }
            return s + ")";
          },
      },
      v_);
}

}  // namespace improvelearn
