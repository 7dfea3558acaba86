#pragma once

#include <stdexcept>
#include <string>

namespace muntzlab {

// Failure categories surfaced by the library. Tests match on the kind rather
// than on message text.
enum class ErrorKind {
    Domain,          // argument outside the documented domain
    NotLacunary,     // ratio condition unsatisfiable for every onset choice
    UnknownExponent, // polynomial exponent not present in a sequence/partition
    Accuracy,        // quadrature failed to reach the requested tolerance
    NonConvergence,  // optimizer failed its sampling cross-check
    Precondition,    // experiment precondition violated
    Config,          // malformed config document / CLI usage
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace muntzlab
