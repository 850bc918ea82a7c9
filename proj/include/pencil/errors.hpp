#pragma once

#include <stdexcept>

namespace pencil {

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// A user-supplied minimal polynomial turned out to be reducible.
struct NonFieldModulus : std::domain_error {
  using std::domain_error::domain_error;
};

struct TowerMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An explicit construction did not satisfy an identity it is supposed to satisfy.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pencil
