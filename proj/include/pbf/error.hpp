#pragma once

#include <stdexcept>
#include <string>

namespace pbf {

/// Argument outside the mathematical domain of a formula (non-positive
/// degrees of freedom, non-finite input, alpha <= -1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A required argument is missing or inconsistent with the request.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Data for which the statistic is undefined (e.g. both samples constant).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbf
