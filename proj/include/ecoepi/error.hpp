#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecoepi {

enum class ErrorKind {
    InvalidParams,
    InvalidState,
    Domain,
    InvalidInput,
    NoRoots,
    DegreeMismatch,
    IllConditioned,
    ZeroDenominator,
    UndefinedR0,
    Precondition,
    ConsistencyFailure,
    IntegrationFailure,
    Config,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers (and the
/// CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace ecoepi
