#pragma once

#include <stdexcept>
#include <string>

namespace nchad {

// Two elements over different algebras were combined.
class ShapeMismatchError : public std::invalid_argument {
public:
  ShapeMismatchError(const std::string& lhs, const std::string& rhs)
      : std::invalid_argument("algebra shape mismatch: " + lhs + " vs " + rhs),
        lhs_(lhs),
        rhs_(rhs) {}

  const std::string& lhs() const noexcept { return lhs_; }
  const std::string& rhs() const noexcept { return rhs_; }

private:
  std::string lhs_;
  std::string rhs_;
};

// A construction hypothesis failed at the configured tolerance. The
// hypothesis name is a stable machine-readable token (used in CLI reports).
class PreconditionError : public std::runtime_error {
public:
  PreconditionError(std::string hypothesis, double residual, const std::string& detail)
      : std::runtime_error("precondition '" + hypothesis + "' failed: " + detail),
        hypothesis_(std::move(hypothesis)),
        residual_(residual) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }
  double residual() const noexcept { return residual_; }

private:
  std::string hypothesis_;
  double residual_;
};

}  // namespace nchad
