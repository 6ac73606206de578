#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lstab {

enum class ErrorKind {
    Precondition,
    NotSeparating,
    DecisionModeUnavailable,
    InadmissibleType,
    ImplausibleChi,
    InvalidPolarization,
    PreconditionUnverified,
    NotCompactType,
    BudgetExceeded,
    NotRegular,
    NotDestabilized,
    RealizationUnavailable,
    Parse,
    Validation,
    Usage,
    Overflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    // Message without the "Kind: " prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

} // namespace lstab
