#include "lstab/error.hpp"
#include "lstab/rational.hpp"


namespace lstab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::DecisionModeUnavailable: return "DecisionModeUnavailable";
    case ErrorKind::InadmissibleType: return "InadmissibleType";
    case ErrorKind::ImplausibleChi: return "ImplausibleChi";
    case ErrorKind::InvalidPolarization: return "InvalidPolarization";
    case ErrorKind::PreconditionUnverified: return "PreconditionUnverified";
    case ErrorKind::NotCompactType: return "NotCompactType";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotDestabilized: return "NotDestabilized";
    case ErrorKind::RealizationUnavailable: return "RealizationUnavailable";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::Overflow: return "Overflow";
    }
    return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind), detail_(message) {}

void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

std::string format_rational(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

namespace {

boost::multiprecision::cpp_int parse_integer(std::string_view text, std::string_view whole) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty())
        fail(ErrorKind::Parse, "malformed number '" + std::string(whole) + "'");
    for (char c : digits)
        if (c < '0' || c > '9')
            fail(ErrorKind::Parse, "malformed number '" + std::string(whole) + "'");
    boost::multiprecision::cpp_int value{std::string(digits)};
    return text.front() == '-' ? -value : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

Int checked_add(Int a, Int b) {
    Int out = 0;
    if (__builtin_add_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "64-bit integer overflow in addition");
    return out;
}

Int checked_mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "64-bit integer overflow in multiplication");
    return out;
}

} // namespace lstab
