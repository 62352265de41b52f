#pragma once

#include <stdexcept>
#include <string>

namespace frogcrit {

// Argument outside the domain of a function or type invariant.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Series evaluated at or beyond its radius of convergence.
class DivergenceError : public DomainError {
public:
  using DomainError::DomainError;
};

// Result of a computation falls outside its admissible range.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

// A root finder could not establish a sign change on its search interval.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Simulation exceeded its activated-vertex budget.
class MemoryCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace frogcrit
