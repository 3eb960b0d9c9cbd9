#pragma once

#include <stdexcept>
#include <string>

namespace hnwalk {

// Base class for everything this library throws on its own behalf.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid arguments: bad lattice parameters, basis/params mismatch,
// unknown initial-state kind, bad fit windows.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A documented precondition was violated (e.g. an observable was handed
// an unnormalized state).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Time propagation failed; the message names the time of failure.
class EvolutionError : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violations: zero-norm state, nonpositive QFI in
// a Cramer-Rao bound, oracle scale guards.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Finite-difference step too small to resolve; the message says how to fix it.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration rejected; the message carries the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A sweep point failed mid-run; the message names the point.
class RunError : public Error {
 public:
  using Error::Error;
};

}  // namespace hnwalk
