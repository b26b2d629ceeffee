#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>

namespace softnls {

/// Raised when inputs violate a structural precondition: mismatched
/// parameter sets or dimensions, non-finite values, invalid tolerances.
class StructuralError : public std::invalid_argument {
 public:
  explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw StructuralError(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw StructuralError(what);
}

// Builds the message only on failure.
template <class Msg>
  requires std::invocable<Msg>
inline void require(bool cond, Msg&& what) {
  if (!cond) throw StructuralError(std::forward<Msg>(what)());
}

}  // namespace detail
}  // namespace softnls
