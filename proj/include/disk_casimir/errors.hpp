#pragma once

#include <stdexcept>
#include <string>

namespace disk_casimir {

// invalid indices or arguments outside an operation's domain
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// value not representable in double precision
struct range_error : std::range_error {
  using std::range_error::range_error;
};

// iteration budget exhausted, cancellation, quadrature failure...
struct numerical_error : std::runtime_error {
  double estimate = 0.0;  // loss / residual estimate attached by the thrower
  numerical_error(const std::string& what, double est = 0.0)
      : std::runtime_error(what), estimate(est) {}
};

// series not decayed by the configured truncation
struct truncation_error : numerical_error {
  using numerical_error::numerical_error;
};

// unitarity or reality check tripped
struct convergence_error : numerical_error {
  using numerical_error::numerical_error;
};

// d <= R or spectral radius >= 1
struct geometry_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace disk_casimir
