#pragma once

#include <stdexcept>
#include <string>

namespace cdsnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown scenario identifier.
class NotFound : public Error {
 public:
  using Error::Error;
};

// Malformed configuration document. `path()` names the offending field,
// e.g. "pair_stats[2].mean".
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of an operation (f_h outside [0,1], q outside (0,1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Micro-oracle network configuration that cannot be sampled (e.g. C >= N).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

}  // namespace cdsnet
