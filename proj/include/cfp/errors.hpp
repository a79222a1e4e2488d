#pragma once

#include <source_location>
#include <stdexcept>
#include <string>

namespace cfp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates the solver's hypotheses (claw, large clique, short list).
struct InputError : Error {
  using Error::Error;
};

// The graph lacks a structure that a construction step derives from the hypotheses.
struct StructureError : Error {
  using Error::Error;
};

// A caller broke the documented precondition of an operation.
struct ContractError : Error {
  using Error::Error;
};

// Broken internal invariant; always a bug.
struct InternalError : Error {
  using Error::Error;
};

struct NotDecomposable : Error {
  using Error::Error;
};

namespace detail {

inline std::string where(const std::source_location& loc) {
  return std::string(loc.file_name()) + ":" + std::to_string(loc.line());
}

inline void check_internal(bool ok, const std::string& what,
                           std::source_location loc = std::source_location::current()) {
  if (!ok) throw InternalError(what + " (" + where(loc) + ")");
}

inline void check_contract(bool ok, const std::string& what) {
  if (!ok) throw ContractError(what);
}

inline void check_structure(bool ok, const std::string& what) {
  if (!ok) throw StructureError(what);
}

}  // namespace detail
}  // namespace cfp
