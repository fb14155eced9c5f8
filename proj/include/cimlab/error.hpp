#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cimlab {

/// Failure categories surfaced by the library; the CLI maps all of them to exit code 2.
enum class ErrorKind {
  invalid_order,
  invalid_action,
  invalid_argument,
  capacity,
  precondition,
  identity_in_connection_set,
  not_symmetric,
  duplicate_entry,
  not_transitive,
  stabilizer_not_cyclic,
  no_regular_copy,
  not_in_class_m,
  orbit_not_faithful,
  generation_condition,
  unsupported_reduction,
  parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::invalid_action: return "invalid-action";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::identity_in_connection_set: return "identity-in-S";
    case ErrorKind::not_symmetric: return "S-not-symmetric";
    case ErrorKind::duplicate_entry: return "duplicate-entry";
    case ErrorKind::not_transitive: return "not-transitive";
    case ErrorKind::stabilizer_not_cyclic: return "stabilizer-not-cyclic";
    case ErrorKind::no_regular_copy: return "no-regular-copy";
    case ErrorKind::not_in_class_m: return "not-in-class-M";
    case ErrorKind::orbit_not_faithful: return "orbit-not-faithful";
    case ErrorKind::generation_condition: return "generation-condition";
    case ErrorKind::unsupported_reduction: return "unsupported-reduction";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CIMLAB_REQUIRE(cond, kind, msg)          \
  do {                                           \
    if (!(cond)) {                               \
      throw ::cimlab::Error((kind), (msg));      \
    }                                            \
  } while (false)

}  // namespace cimlab
