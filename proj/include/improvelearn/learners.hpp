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

#include <cstdint>
#include <optional>
#include <vector>

#include "improvelearn/distribution.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/loss.hpp"

namespace improvelearn {

/// Threshold at the smallest positive example; Threshold(1) without positives.
/// Throws InconsistentSample if a negative lies at or above the result.
Hypothesis learn_threshold_conservative(const Sample& sample);

/// CLOS_H(S): the smallest family member containing a point set.
class ClosureOperator {
 public:
  enum class Family { kThresholds, kRectangles, kFiniteClass };

  static ClosureOperator thresholds();
  static ClosureOperator rectangles();
  /// Finite class of FiniteLabeling hypotheses over node ids; rejects classes
  /// that are not closed under pairwise intersection.
  static ClosureOperator finite_class(std::vector<Hypothesis> hypotheses);
  /// Same, without the intersection-closure check. The closure is still the
  /// intersection of all members containing the points, which need not be a
  /// member itself.
  static ClosureOperator finite_class_unchecked(std::vector<Hypothesis> hypotheses);

  Family family() const { return family_; }
  const std::vector<Hypothesis>& hypotheses() const { return hypotheses_; }

  Hypothesis close(const std::vector<Point>& positives) const;

 private:
  ClosureOperator(Family f, std::vector<Hypothesis> hs) : family_(f), hypotheses_(std::move(hs)) {}
  Family family_;
  std::vector<Hypothesis> hypotheses_;
  std::size_t domain_size_ = 0;
};

/// h^c_S = CLOS(S+). Throws InconsistentSample if a negative example falls
/// inside the closure.
Hypothesis closure_learn(const Sample& sample, const ClosureOperator& op);

struct ImprovementRegionReport {
  double mass = 0.0;
  std::optional<double> closed_form;
  double mc_stderr = 0.0;
};

/// x ∈ IR(h; f*, Δ): h(x) = 0 and some x' ∈ Δ(x) has h(x') = f*(x') = 1.
bool in_improvement_region(const Point& x, const LossSetting& s);

ImprovementRegionReport improvement_region_mass(const LossSetting& s, const DistributionSpec& dist,
                                                std::size_t n_samples, std::uint64_t seed);

/// SingletonPositive at the first positive example, else ConstantZero.
Hypothesis learn_singleton_positive(const Sample& sample);

struct FeasibilityResult {
  std::vector<double> w;  // unit normal with y'_i <w, x_i> > 0 for all i
  std::size_t updates = 0;
};

inline constexpr std::size_t kPerceptronCap = 1'000'000;

/// Mistake-driven correction over the homogeneous constraints
/// (2y_i - 1) <w, x_i> > 0, starting at the label-weighted mean direction and
/// sweeping the constraints in a seeded order. Throws NonSeparable at the cap.
FeasibilityResult find_consistent_direction(const Sample& sample, std::uint64_t seed = 0,
                                            std::size_t cap = kPerceptronCap);

/// Consistent homogeneous direction w, shrunk to {x : <w, x> >= sin(r/2)}.
Hypothesis learn_halfspace_shifted(const Sample& sample, double r, std::uint64_t seed = 0);

/// 1 iff every homogeneous halfspace consistent with the sample labels x
/// positive. Decided exactly: that holds iff x lies in the cone generated by
/// the sign-adjusted examples, tested by non-negative least squares.
Label pos_agreement_member(const Point& x, const Sample& sample);

/// Non-negative least squares (Lawson-Hanson): argmin ||A z - b|| s.t. z >= 0,
/// with A given column-major as `cols`.
std::vector<double> nnls(const std::vector<std::vector<double>>& cols, const std::vector<double>& b);

}  // namespace improvelearn
