#pragma once

#include <stdexcept>
#include <string>

namespace polyflood {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A model violates one of the structural assumptions (zero endpoint
/// mobilities, unimodal fractional flow, increasing adsorption, ...).
class ModelError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the saturation or concentration domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A wave construction could not locate a root it depends on.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// Time stepping failed: CFL violation, unrecoverable concentration, ...
class StepError : public Error {
public:
  using Error::Error;
};

/// Malformed experiment configuration or command-line input.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace polyflood
