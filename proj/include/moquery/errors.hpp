#pragma once

#include <stdexcept>
#include <string>

namespace moquery {

// Caller broke a documented precondition (bad arity, k out of range, ...).
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

// Input data is unusable: malformed CSV, empty dataset, infeasible constraints.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Problem exceeds a configured size cap; resubmit with smaller input or
// larger limits.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical solver failed internally (iteration limit, witness validation).
class SolverError : public std::runtime_error {
public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moquery
