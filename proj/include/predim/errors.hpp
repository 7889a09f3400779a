#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace predim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (element not in the
/// universe, A not a subset of B, bound too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A predimension configuration violates its contract.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// A matroid oracle could not interpret the annotations it was given.
class OracleError : public Error {
 public:
  using Error::Error;
};

class AmalgamError : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle refuses inputs above its size cap.
class RefusalError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSpecError : public Error {
 public:
  using Error::Error;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Neither branch of the thrifty dichotomy applies.
class ThriftyFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace predim
