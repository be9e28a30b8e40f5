#pragma once

#include <stdexcept>
#include <string>

namespace aorrt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario data is inconsistent (dimensions, bounds, start state in collision).
class InvalidScenarioError : public Error {
 public:
  using Error::Error;
};

/// A planner or integrator parameter is out of its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Integration produced a non-finite state or derivative.
class PropagationDivergedError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace aorrt
