#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quillen {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad model file, unknown generator, wrong degree.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a Lie expression; `offset` is the byte position in the text.
class ParseError : public InputError {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : InputError("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A construction hypothesis failed at runtime (e.g. a kernel that should be
/// acyclic has a cycle without preimage). Signals an invalid input model or a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NoPreimage : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class InputNotCycle : public InputError {
 public:
  using InputError::InputError;
};

class InputNotInKernel : public InputError {
 public:
  using InputError::InputError;
};

/// The differential of a kept fat-wedge generator reaches a removed generator.
class ClosureViolation : public InvariantViolation {
 public:
  ClosureViolation(std::string generator, std::string witness)
      : InvariantViolation("closure violation: d(" + generator + ") uses removed generator " + witness),
        generator_(std::move(generator)),
        witness_(std::move(witness)) {}
  const std::string& generator() const noexcept { return generator_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string generator_;
  std::string witness_;
};

}  // namespace quillen
