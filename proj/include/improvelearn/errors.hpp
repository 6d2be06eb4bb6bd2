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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace improvelearn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument or violated construction invariant.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No exact evaluator exists for a (hypothesis, improvement map) pairing and
/// the grid fallback was not enabled.
class EvaluationUnsupported : public Error {
 public:
  using Error::Error;
};

/// A labeled sample is not realizable by the family the learner assumes.
class InconsistentSample : public Error {
 public:
  using Error::Error;
};

/// The halfspace feasibility routine hit its update cap.
class NonSeparable : public Error {
 public:
  NonSeparable(const std::string& what, std::size_t updates,
               std::size_t residual_violations)
      : Error(what), updates_(updates), residual_(residual_violations) {}

  std::size_t updates() const { return updates_; }
  std::size_t residual_violations() const { return residual_; }

 private:
  std::size_t updates_;
  std::size_t residual_;
};

/// Internal post-condition failed. Reaching this indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int epoch, std::size_t batch)
      : Error(what), epoch_(epoch), batch_(batch) {}
  int epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  int epoch_;
  std::size_t batch_;
};

/// Request would exceed an enumeration budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace improvelearn
