#pragma once

#include <string>

#include "hdgeom/errors.hpp"

namespace hdgeom::detail {

/// Runs fn(); rethrows library errors with the replicate index prefixed.
template <class Fn>
decltype(auto) with_replicate(std::size_t replicate, Fn&& fn) {
  const auto tag = [replicate](const std::exception& e) {
    return "replicate " + std::to_string(replicate) + ": " + e.what();
  };
  try {
    return fn();
  } catch (const DomainError& e) {
    throw DomainError(tag(e));
  } catch (const ArgumentError& e) {
    throw ArgumentError(tag(e));
  } catch (const ConfigError& e) {
    throw ConfigError(tag(e));
  }
}

}  // namespace hdgeom::detail
