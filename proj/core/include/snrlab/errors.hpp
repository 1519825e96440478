#pragma once

#include <stdexcept>
#include <string>

namespace snrlab {

// Thrown when an estimator input sits at or beyond the invertible range of the
// response, e.g. a frame average equal to the full-well value. `bound()` is
// the range edge that was hit; `bracket()` identifies the offending exposure
// bracket where applicable (-1 otherwise).
class SaturationError : public std::runtime_error {
 public:
  SaturationError(const std::string& what, double bound, int bracket = -1)
      : std::runtime_error(what), bound_(bound), bracket_(bracket) {}

  double bound() const noexcept { return bound_; }
  int bracket() const noexcept { return bracket_; }

 private:
  double bound_;
  int bracket_;
};

// Thrown when an iterative solver fails to bracket or refine a root.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace snrlab
