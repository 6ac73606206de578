#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lstab/document.hpp"
#include "lstab/error.hpp"
#include "lstab/query.hpp"

namespace lstab {

inline constexpr std::string_view tool_name = "lstab";
inline constexpr std::string_view tool_version = "0.1.0";

// Process exit codes.
namespace exit_code {
inline constexpr int yes = 0;           // CertifiedYes, Feasible, Success, plain values
inline constexpr int no = 1;            // CertifiedNo, Infeasible
inline constexpr int indeterminate = 2; // Indeterminate, Stalled
inline constexpr int usage = 64;
inline constexpr int data = 65;         // parse and validation errors
inline constexpr int no_input = 66;
inline constexpr int precondition = 67; // an operation rejected its input
inline constexpr int internal = 70;
} // namespace exit_code

int exit_code_for(ErrorKind kind) noexcept;

/// Ordered key/value fields. The first fields are always tool, version,
/// digest, query, bundle, gluing, model and result; operation details follow.
struct Report {
    std::vector<std::pair<std::string, std::string>> fields;
    int exit_code = exit_code::yes;

    const std::string& at(std::string_view key) const; // throws std::out_of_range
    bool has(std::string_view key) const;
};

enum class ReportFormat { Text, Machine };

// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string document_digest(const Document& document);

// Never throws for errors raised by the dispatched operation: they become an
// `error` field and the matching exit code.
Report run_query(const Document& document, const Query& query);
Report run_query(const Document& document, std::string_view query);

// Text: "key: value" lines. Machine: "key<TAB>value" lines. Newlines inside
// values are escaped as "\n".
std::string render(const Report& report, ReportFormat format);

} // namespace lstab
