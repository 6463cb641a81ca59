#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heat {

enum class ErrorKind {
    DomainError,
    UnsupportedRegime,
    MomentDiverges,
    RangeError,
    AlphaOutOfRange,
    ReachExceeded,
    BudgetTooSmall,
    GridTooNarrow,
    IllConditioned,
    UnsupportedMethod,
    InvalidConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const char* message) {
    if (!condition) fail(kind, message);
}

}  // namespace heat
