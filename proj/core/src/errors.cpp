#include "heatcontent/errors.hpp"

namespace heat {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::UnsupportedRegime: return "UnsupportedRegime";
        case ErrorKind::MomentDiverges: return "MomentDiverges";
        case ErrorKind::RangeError: return "RangeError";
        case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorKind::ReachExceeded: return "ReachExceeded";
        case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
        case ErrorKind::GridTooNarrow: return "GridTooNarrow";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::UnsupportedMethod: return "UnsupportedMethod";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace heat
