#pragma once

#include <optional>

#include "locuslab/error.hpp"

// Code of the locuslab::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<locuslab::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const locuslab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
