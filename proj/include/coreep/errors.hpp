#pragma once

#include <stdexcept>
#include <string>

namespace coreep {

enum class ErrorKind {
    ParseError,
    ShapeMismatch,
    FactorizationFailure,
    OverflowFailure,
    DecompositionInconsistency,
    RouteDisagreement,
    IndexTooLarge,
    PremiseViolated,
    NotARankJump,
    NotStable,
    NotSemistable,
    Case1Violated,
    PerturbedCoreUnstable,
    TruncationInsufficient,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception; `kind` drives the CLI exit-code mapping.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace coreep
