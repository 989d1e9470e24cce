#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtr {

enum class ErrorKind {
    InvalidHierarchy,
    Shape,
    Numeric,
    InsufficientData,
    InvalidShares,
    InvalidWeights,
    InvalidConfig,
    EmptyCycle,
    InvalidDistribution,
    StreamOrder,
    DivisionByZero,
    Schema,
    Parse,
    DuplicateKey,
    Boundary,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace dtr
