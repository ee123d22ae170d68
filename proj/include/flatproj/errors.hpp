#pragma once

#include <stdexcept>
#include <string>

namespace flatproj {

/// Input outside the mathematical domain of an operation (bad parameters,
/// non-finite arguments, mismatched lengths).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation is well-posed but the requested point is unusable, e.g. a
/// log-derivative requested outside the transient zone.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// The discretisation cannot deliver a trustworthy value (pole too close to
/// the edge of the sampled range).
class AccuracyError : public std::runtime_error {
 public:
  explicit AccuracyError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative refinement gate did not settle.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace flatproj
