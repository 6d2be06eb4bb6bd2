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

#include "improvelearn/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "improvelearn/errors.hpp"
#include "overloaded.hpp"

namespace improvelearn {

namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

// Decision-relevant shape of Δ(x).
struct Region {
  enum Kind { kLine, kBox, kCap, kFinite } kind = kLine;
  IntervalSet line;
  std::vector<double> lo, hi;
  bool whole_sphere = false;
  std::vector<double> center;
  double cos_r = 1.0;
  std::vector<NodeId> ids;
};

[[noreturn]] void unsupported_map(const ImprovementMap& m, const InstanceSpace& s) {
  throw EvaluationUnsupported("improvement map " + m.kind() + " is not defined on a " +
                              s.kind() + " instance space");
}

[[noreturn]] void unsupported_pair(const Hypothesis& h, const ImprovementMap& m) {
  throw EvaluationUnsupported("no exact evaluator for hypothesis " + h.kind() +
                              " with improvement map " + m.kind());
}

std::size_t node_of(const Point& x, const NodeSpace& s) {
  std::size_t id = x.node_id();
  if (id >= s.n) throw ArgumentError("node " + std::to_string(id) + " outside the instance space");
  return id;
}

Region line_ball(const Point& x, double r, bool open, const LineSpace& s) {
  Region reg;
  reg.kind = Region::kLine;
  Interval ball{x[0] - r, x[0] + r, !open, !open};
  reg.line = IntervalSet::of(ball).intersect(IntervalSet::of(Interval::closed(s.lo, s.hi)));
  return reg;
}

Region box_ball(const Point& x, double r, const std::vector<std::size_t>* mask, std::size_t d) {
  if (x.dim() != d) throw ArgumentError("point dimension does not match the box");
  Region reg;
  reg.kind = Region::kBox;
  reg.lo.assign(x.coords().begin(), x.coords().end());
  reg.hi = reg.lo;
  auto widen = [&](std::size_t i) {
    reg.lo[i] = std::max(0.0, x[i] - r);
    reg.hi[i] = std::min(1.0, x[i] + r);
  };
  if (mask) {
    for (std::size_t i : *mask) {
      if (i >= d) throw ArgumentError("improvement mask index out of range");
      widen(i);
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) widen(i);
  }
  return reg;
}

Region delta_region(const Point& x, const ImprovementMap& delta, const InstanceSpace& space) {
  const ImprovementMap& m = delta.resolve(x);
  const auto& sv = space.variant();
  return std::visit(
      Overloaded{
          [&](const IntervalBall& b) -> Region {
            if (const auto* s = std::get_if<LineSpace>(&sv)) return line_ball(x, b.r, b.open, *s);
            if (const auto* s = std::get_if<BoxSpace>(&sv)) return box_ball(x, b.r, nullptr, s->d);
            unsupported_map(m, space);
          },
          [&](const LinfBall& b) -> Region {
            if (const auto* s = std::get_if<LineSpace>(&sv)) return line_ball(x, b.r, false, *s);
            if (const auto* s = std::get_if<BoxSpace>(&sv)) return box_ball(x, b.r, nullptr, s->d);
            unsupported_map(m, space);
          },
          [&](const MaskedLinfBall& b) -> Region {
            if (const auto* s = std::get_if<LineSpace>(&sv)) {
              bool moves = std::find(b.mask.begin(), b.mask.end(), 0) != b.mask.end();
              return line_ball(x, moves ? b.r : 0.0, false, *s);
            }
            if (const auto* s = std::get_if<BoxSpace>(&sv)) return box_ball(x, b.r, &b.mask, s->d);
            unsupported_map(m, space);
          },
          [&](const AngularBall& b) -> Region {
            const auto* s = std::get_if<SphereSpace>(&sv);
            if (!s) unsupported_map(m, space);
            if (x.dim() != s->d) throw ArgumentError("point dimension does not match the sphere");
            Region reg;
            reg.kind = Region::kCap;
            reg.center = normalized(x.coords());
            reg.cos_r = std::cos(b.r);
            return reg;
          },
          [&](const GraphNeighborhood& g) -> Region {
            const auto* s = std::get_if<NodeSpace>(&sv);
            if (!s) unsupported_map(m, space);
            if (g.power->n() != s->n) {
              throw ArgumentError("graph size does not match the node instance space");
            }
            Region reg;
            reg.kind = Region::kFinite;
            reg.ids = g.power->neighbors(node_of(x, *s));
            return reg;
          },
          [&](const WholeSpace&) -> Region {
            Region reg;
            return std::visit(
                Overloaded{
                    [&](const LineSpace& s) {
                      reg.kind = Region::kLine;
                      reg.line = IntervalSet::of(Interval::closed(s.lo, s.hi));
                      return reg;
                    },
                    [&](const BoxSpace& s) {
                      reg.kind = Region::kBox;
                      reg.lo.assign(s.d, 0.0);
                      reg.hi.assign(s.d, 1.0);
                      return reg;
                    },
                    [&](const SphereSpace& s) {
                      reg.kind = Region::kCap;
                      reg.whole_sphere = true;
                      reg.center.assign(s.d, 0.0);
                      reg.center[0] = 1.0;
                      return reg;
                    },
                    [&](const NodeSpace& s) {
                      reg.kind = Region::kFinite;
                      reg.ids.resize(s.n);
                      for (std::size_t i = 0; i < s.n; ++i) reg.ids[i] = i;
                      return reg;
                    },
                },
                sv);
          },
          [&](const FiniteTable& t) -> Region {
            const auto* s = std::get_if<NodeSpace>(&sv);
            if (!s) unsupported_map(m, space);
            Region reg;
            reg.kind = Region::kFinite;
            auto it = t.table.find(node_of(x, *s));
            if (it != t.table.end()) {
              for (NodeId id : it->second) {
                if (id >= s->n) throw ArgumentError("finite table references a node outside the space");
              }
              reg.ids = it->second;
            }
            return reg;
          },
          [&](const PiecewiseRegion&) -> Region {
            throw InvariantViolation("piecewise map was not resolved");
          },
      },
      m.variant());
}

bool satisfies(const Point& y, std::initializer_list<Requirement> reqs) {
  for (const auto& r : reqs) {
    if (r.h->predict(y) != r.label) return false;
  }
  return true;
}

std::optional<Point> finite_engine(const Region& reg, std::initializer_list<Requirement> reqs) {
  for (NodeId id : reg.ids) {
    Point y = Point::node(id);
    if (satisfies(y, reqs)) return y;
  }
  return std::nullopt;
}

// Returns false when some requirement has no line geometry.
bool line_engine(const Region& reg, std::initializer_list<Requirement> reqs,
                 std::optional<Point>& out) {
  IntervalSet feasible = reg.line;
  for (const auto& r : reqs) {
    auto pos = line_region(*r.h);
    if (!pos) return false;
    feasible = feasible.intersect(r.label ? *pos : pos->complement());
  }
  auto p = feasible.any_point();
  out = p ? std::optional<Point>(Point::scalar(*p)) : std::nullopt;
  return true;
}

bool box_engine(const Region& reg, std::initializer_list<Requirement> reqs,
                std::optional<Point>& out) {
  std::vector<double> lo = reg.lo, hi = reg.hi;
  const std::size_t d = lo.size();
  std::vector<std::pair<std::vector<double>, std::vector<double>>> excluded;
  std::vector<const Point*> singletons;
  out.reset();
  for (const auto& r : reqs) {
    const Hypothesis& h = *r.h;
    if (h.get_if<ConstantOne>()) {
      if (!r.label) return true;
    } else if (h.get_if<ConstantZero>()) {
      if (r.label) return true;
    } else if (const auto* rect = h.get_if<Rectangle>()) {
      if (rect->lo.size() != d) throw ArgumentError("rectangle dimension does not match the box");
      if (r.label) {
        for (std::size_t i = 0; i < d; ++i) {
          lo[i] = std::max(lo[i], rect->lo[i]);
          hi[i] = std::min(hi[i], rect->hi[i]);
        }
      } else {
        excluded.emplace_back(rect->lo, rect->hi);
      }
    } else if (const auto* s = h.get_if<SingletonPositive>()) {
      if (s->p.dim() != d) throw ArgumentError("singleton dimension does not match the box");
      if (r.label) {
        singletons.push_back(&s->p);
        for (std::size_t i = 0; i < d; ++i) {
          lo[i] = std::max(lo[i], s->p[i]);
          hi[i] = std::min(hi[i], s->p[i]);
        }
      } else {
        excluded.emplace_back(s->p.vec(), s->p.vec());
      }
    } else {
      return false;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] > hi[i]) return true;
  }
  std::vector<double> y(d);
  for (std::size_t i = 0; i < d; ++i) y[i] = 0.5 * (lo[i] + hi[i]);
  if (!singletons.empty()) y = singletons.front()->vec();
  if (excluded.empty()) {
    out = Point(std::move(y));
    return true;
  }
  if (excluded.size() > 1) return false;
  const auto& [elo, ehi] = excluded.front();
  for (std::size_t i = 0; i < d; ++i) {
    if (lo[i] < elo[i]) {
      y[i] = lo[i];
      out = Point(std::move(y));
      return true;
    }
    if (hi[i] > ehi[i]) {
      y[i] = hi[i];
      out = Point(std::move(y));
      return true;
    }
  }
  return true;
}

// <a, y> >= alpha, or > alpha when strict.
struct Cap {
  std::vector<double> a;
  double alpha;
  bool strict;
};

std::vector<double> any_orthogonal(const std::vector<std::vector<double>>& basis, std::size_t d) {
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> v(d, 0.0);
    v[k] = 1.0;
    for (const auto& b : basis) {
      double c = dot(v, b);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * b[i];
    }
    if (norm2(v) > 1e-6) return normalized(v);
  }
  return {};
}

bool cap_ok(const Cap& c, const std::vector<double>& y) {
  double v = dot(c.a, y);
  return c.strict ? v > c.alpha + kGeomTol : v >= c.alpha - kGeomTol;
}

// Maximizes <c, y> over the unit sphere intersected with at most two caps
// by enumerating active sets (interior, one boundary, both boundaries).
std::optional<std::vector<double>> max_over_caps(const std::vector<double>& c,
                                                 const std::vector<Cap>& caps) {
  const std::size_t d = c.size();
  std::vector<std::vector<double>> candidates;
  candidates.push_back(c);
  for (const Cap& k : caps) {
    if (std::abs(k.alpha) > 1.0 + kGeomTol) continue;
    double along = dot(c, k.a);
    std::vector<double> u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = c[i] - along * k.a[i];
    if (norm2(u) > 1e-12) {
      u = normalized(u);
    } else {
      u = any_orthogonal({k.a}, d);
      if (u.empty()) continue;
    }
    double s = std::sqrt(std::max(0.0, 1.0 - k.alpha * k.alpha));
    std::vector<double> y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = k.alpha * k.a[i] + s * u[i];
    candidates.push_back(std::move(y));
  }
  if (caps.size() == 2) {
    const auto& a1 = caps[0].a;
    const auto& a2 = caps[1].a;
    double g = dot(a1, a2);
    double det = 1.0 - g * g;
    if (det > 1e-12) {
      double l1 = (caps[0].alpha - g * caps[1].alpha) / det;
      double l2 = (caps[1].alpha - g * caps[0].alpha) / det;
      std::vector<double> y0(d);
      for (std::size_t i = 0; i < d; ++i) y0[i] = l1 * a1[i] + l2 * a2[i];
      double rem = 1.0 - dot(y0, y0);
      if (rem >= -kGeomTol) {
        rem = std::max(0.0, rem);
        // Component of c orthogonal to span(a1, a2).
        std::vector<double> e1 = a1;
        std::vector<double> e2(d);
        for (std::size_t i = 0; i < d; ++i) e2[i] = a2[i] - g * a1[i];
        e2 = normalized(e2);
        std::vector<double> cp = c;
        double c1 = dot(cp, e1), c2 = dot(cp, e2);
        for (std::size_t i = 0; i < d; ++i) cp[i] -= c1 * e1[i] + c2 * e2[i];
        std::vector<double> u;
        if (norm2(cp) > 1e-12) {
          u = normalized(cp);
        } else {
          u = any_orthogonal({e1, e2}, d);
        }
        std::vector<double> y = y0;
        if (!u.empty()) {
          double s = std::sqrt(rem);
          for (std::size_t i = 0; i < d; ++i) y[i] += s * u[i];
        }
        if (std::abs(norm2(y) - 1.0) <= 1e-9) candidates.push_back(std::move(y));
      }
    }
  }
  std::optional<std::vector<double>> best;
  double best_v = -std::numeric_limits<double>::infinity();
  for (auto& y : candidates) {
    bool ok = true;
    for (const Cap& k : caps) {
      // Strict constraints in the feasible set are treated as closed: the
      // difference is a boundary of measure zero.
      if (dot(k.a, y) < k.alpha - kGeomTol) ok = false;
    }
    double v = dot(c, y);
    if (ok && v > best_v) {
      best_v = v;
      best = std::move(y);
    }
  }
  return best;
}

bool cap_engine(const Region& reg, std::initializer_list<Requirement> reqs,
                std::optional<Point>& out) {
  const std::size_t d = reg.center.size();
  std::vector<Cap> caps;
  std::vector<const Point*> singleton_pos, singleton_neg;
  out.reset();
  if (!reg.whole_sphere) caps.push_back({reg.center, reg.cos_r, false});
  for (const auto& r : reqs) {
    const Hypothesis& h = *r.h;
    if (h.get_if<ConstantOne>()) {
      if (!r.label) return true;
    } else if (h.get_if<ConstantZero>()) {
      if (r.label) return true;
    } else if (const auto* s = h.get_if<HomogeneousHalfspace>()) {
      if (s->w.size() != d) throw ArgumentError("halfspace dimension does not match the sphere");
      if (r.label) {
        caps.push_back({s->w, 0.0, false});
      } else {
        std::vector<double> neg = s->w;
        for (double& v : neg) v = -v;
        caps.push_back({neg, 0.0, true});
      }
    } else if (const auto* s = h.get_if<AffineHalfspace>()) {
      if (s->w.size() != d) throw ArgumentError("halfspace dimension does not match the sphere");
      if (r.label) {
        caps.push_back({s->w, s->offset, false});
      } else {
        std::vector<double> neg = s->w;
        for (double& v : neg) v = -v;
        caps.push_back({neg, -s->offset, true});
      }
    } else if (const auto* s = h.get_if<SingletonPositive>()) {
      (r.label ? singleton_pos : singleton_neg).push_back(&s->p);
    } else {
      return false;
    }
  }
  if (!singleton_pos.empty()) {
    const Point& p = *singleton_pos.front();
    if (p.dim() != d) return true;
    for (const Cap& k : caps) {
      if (!cap_ok(k, p.vec())) return true;
    }
    for (const auto& r : reqs) {
      if (r.h->predict(p) != r.label) return true;
    }
    out = p;
    return true;
  }
  if (caps.empty()) {
    out = Point(reg.center);
  } else {
    if (caps.size() > 3) return false;
    // The objective is a strict constraint when there is one.
    auto strict_it = std::find_if(caps.begin(), caps.end(), [](const Cap& k) { return k.strict; });
    if (strict_it != caps.end()) std::iter_swap(strict_it, caps.end() - 1);
    Cap objective = caps.back();
    caps.pop_back();
    auto y = max_over_caps(objective.a, caps);
    if (!y || !cap_ok(objective, *y)) return true;
    out = Point(std::move(*y));
  }
  for (const Point* q : singleton_neg) {
    if (*out == *q) return false;
  }
  return true;
}

std::optional<Point> grid_engine(const Region& reg, std::initializer_list<Requirement> reqs,
                                 std::size_t resolution) {
  std::vector<double> lo, hi;
  if (reg.kind == Region::kBox) {
    lo = reg.lo;
    hi = reg.hi;
  } else {
    if (reg.line.empty()) return std::nullopt;
    lo = {reg.line.parts().front().lo};
    hi = {reg.line.parts().back().hi};
  }
  const std::size_t d = lo.size();
  const std::size_t g = std::max<std::size_t>(resolution, 2);
  std::vector<std::size_t> counts(d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    counts[i] = lo[i] < hi[i] ? g : 1;
    if (total > kMaxGridPoints / counts[i]) {
      throw ResourceError("grid fallback would exceed 2^24 points");
    }
    total *= counts[i];
  }
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> y(d);
  for (std::size_t step = 0; step < total; ++step) {
    for (std::size_t i = 0; i < d; ++i) {
      y[i] = counts[i] == 1 ? lo[i]
                            : lo[i] + (hi[i] - lo[i]) * static_cast<double>(idx[i]) /
                                          static_cast<double>(counts[i] - 1);
    }
    bool in = reg.kind == Region::kBox || reg.line.contains(y[0]);
    if (in) {
      Point p(y);
      if (satisfies(p, reqs)) return p;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (++idx[i] < counts[i]) break;
      idx[i] = 0;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Point> find_reachable(const Point& x, const ImprovementMap& delta,
                                    const InstanceSpace& space,
                                    std::initializer_list<Requirement> reqs,
                                    const EvalOptions& opts) {
  Region reg = delta_region(x, delta, space);
  std::optional<Point> out;
  bool handled = false;
  switch (reg.kind) {
    case Region::kFinite:
      return finite_engine(reg, reqs);
    case Region::kLine:
      handled = line_engine(reg, reqs, out);
      break;
    case Region::kBox:
      handled = box_engine(reg, reqs, out);
      break;
    case Region::kCap:
      handled = cap_engine(reg, reqs, out);
      break;
  }
  if (handled) return out;
  if (opts.grid_fallback && reg.kind != Region::kCap) {
    return grid_engine(reg, reqs, opts.grid_resolution);
  }
  for (const auto& r : reqs) {
    bool simple = r.h->get_if<ConstantZero>() || r.h->get_if<ConstantOne>();
    if (!simple) unsupported_pair(*r.h, delta);
  }
  unsupported_pair(*reqs.begin()->h, delta);
}

bool delta_contains(const ImprovementMap& delta, const InstanceSpace& space, const Point& x,
                    const Point& y) {
  Region reg = delta_region(x, delta, space);
  switch (reg.kind) {
    case Region::kFinite: {
      std::size_t id = y.node_id();
      return std::find(reg.ids.begin(), reg.ids.end(), id) != reg.ids.end();
    }
    case Region::kLine:
      return y.dim() == 1 && reg.line.contains(y[0]);
    case Region::kBox:
      if (y.dim() != reg.lo.size()) return false;
      for (std::size_t i = 0; i < y.dim(); ++i) {
        if (y[i] < reg.lo[i] || y[i] > reg.hi[i]) return false;
      }
      return true;
    case Region::kCap:
      if (!space.contains(y)) return false;
      return reg.whole_sphere || dot(reg.center, y.coords()) >= reg.cos_r - kGeomTol;
  }
  return false;
}

std::vector<NodeId> enumerate_delta(const Point& x, const ImprovementMap& delta,
                                    const InstanceSpace& space) {
  if (!space.finite()) throw EvaluationUnsupported("Δ(x) can only be enumerated on node spaces");
  return delta_region(x, delta, space).ids;
}

}  // namespace improvelearn
