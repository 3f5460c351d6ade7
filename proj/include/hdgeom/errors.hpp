#pragma once

#include <stdexcept>
#include <string>

namespace hdgeom {

// Error taxonomy. The CLI maps these onto process exit codes:
// ConfigError/ArgumentError -> 2, DomainError/ResourceError -> 3, IoError -> 4.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to an otherwise well-configured operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Numerical-domain failure: non-finite data, non-SPD input, out-of-support point.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested work exceeds a declared computational cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <class E>
inline void require(bool cond, const std::string& what) {
  if (!cond) throw E(what);
}

}  // namespace detail
}  // namespace hdgeom
