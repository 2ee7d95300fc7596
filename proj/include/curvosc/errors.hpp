#pragma once

#include <stdexcept>
#include <string>

namespace curvosc {

// Evaluation at a pole of a special function (Gamma at non-positive
// integers, Tan_k at a zero of Cos_k).
class PoleError : public std::domain_error {
 public:
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Radial coordinate outside the configuration-space domain.
class RadialDomainError : public std::domain_error {
 public:
  explicit RadialDomainError(const std::string& what) : std::domain_error(what) {}
};

// Quantum numbers with no bound state at this curvature.
class NoBoundStateError : public std::domain_error {
 public:
  explicit NoBoundStateError(const std::string& what) : std::domain_error(what) {}
};

// Normalization integral diverges (marginal or inadmissible hyperbolic state).
class DivergentNormError : public std::domain_error {
 public:
  explicit DivergentNormError(const std::string& what) : std::domain_error(what) {}
};

// Hypergeometric parameters would be complex (unphysical input energy).
class ComplexParameterError : public std::domain_error {
 public:
  explicit ComplexParameterError(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace curvosc
