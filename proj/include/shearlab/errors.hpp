#pragma once

#include <stdexcept>
#include <string>

namespace shearlab {

/// Raised when a derivative is requested from a profile at a point where it
/// has no classical derivative (step at its jump, cusp or sin(1/x) at 0).
class NonDifferentiableProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroMode : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidBackground : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TooCloseToSheet : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ExpansionOrderTooHigh : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigInvalid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace shearlab
