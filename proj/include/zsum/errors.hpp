#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed groups, elements, sequences or parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A witness or family that does not certify what it claims.
class InvalidWitness : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A theorem-style construction hit a state its proof rules out.
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

// A search or check ran out of its node or time allowance.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// An exhaustive oracle found no witness where one was claimed to exist.
class CounterexampleFound : public Error {
 public:
  CounterexampleFound(std::string what, std::string payload)
      : Error(std::move(what)), payload_(std::move(payload)) {}
  // Sequence file document describing the offending input.
  const std::string& payload() const noexcept { return payload_; }

 private:
  std::string payload_;
};

}  // namespace zsum
