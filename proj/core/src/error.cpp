#include "dtr/error.hpp"

namespace dtr {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidHierarchy: return "invalid-hierarchy";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::InvalidShares: return "invalid-shares";
    case ErrorKind::InvalidWeights: return "invalid-weights";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::EmptyCycle: return "empty-cycle";
    case ErrorKind::InvalidDistribution: return "invalid-distribution";
    case ErrorKind::StreamOrder: return "stream-order";
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::DuplicateKey: return "duplicate-key";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

} // namespace dtr
