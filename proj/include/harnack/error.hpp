#pragma once

#include <stdexcept>
#include <string>

namespace harnack {

/// Invalid user input: configuration keys, parameters, file contents.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not be carried out to the required accuracy
/// (non-finite integrand, lost positive-definiteness, ill-conditioned
/// finite differences, ...).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Topology certification exceeded its refinement budget.
class certification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace harnack
