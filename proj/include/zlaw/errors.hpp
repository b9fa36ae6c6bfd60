#pragma once

#include <stdexcept>
#include <string>

namespace zlaw {

/// Argument outside the supported working range of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The oracle cannot reach the requested number of digits at this abscissa.
class PrecisionUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root solver gave up; carries the last bracket.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double lo, double hi)
      : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

/// A sampled sign change of Z failed to refine to a genuine zero.
class SuspiciousZero : public std::runtime_error {
 public:
  SuspiciousZero(const std::string& what, double lo, double hi)
      : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
  double bracket_lo;
  double bracket_hi;
};

/// Adaptive quadrature exhausted its subdivision budget.
class MaxSubdivision : public std::runtime_error {
 public:
  MaxSubdivision(const std::string& what, double lo, double hi)
      : std::runtime_error(what), interval_lo(lo), interval_hi(hi) {}
  double interval_lo;
  double interval_hi;
};

/// A pulled-back set leaves the range covered by a ladder grid.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zlaw
