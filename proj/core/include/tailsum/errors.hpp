#pragma once

#include <stdexcept>
#include <string>

namespace tailsum {

/// An argument lies outside the domain of the operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact-integer result does not fit the integer range.
class overflow_error : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// The request is valid but too expensive for the chosen algorithm.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived estimate does not exist for the given data (e.g. T_n(p) == 0).
class undefined_estimate : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tailsum
