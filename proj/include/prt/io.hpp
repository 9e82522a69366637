#pragma once

// Canonical JSON interchange format for platform and application documents.

#include "prt/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prt {

enum class Severity { Error, Warning };

std::string_view to_string(Severity s);

/// Stable parse error codes.
namespace io_code {
inline constexpr std::string_view Malformed = "IO001";
inline constexpr std::string_view UnknownKey = "IO002";
inline constexpr std::string_view Unresolved = "IO003";
inline constexpr std::string_view BadLiteral = "IO004";
inline constexpr std::string_view Duplicate = "IO005";
}  // namespace io_code

struct ParseDiagnostic {
    Severity severity = Severity::Error;
    /// JSON-pointer style location; "/" is the document root.
    std::string path;
    std::string message;
    std::string code;

    friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

/// Either a model or at least one error diagnostic, never both.
template <typename Model>
struct ParseResult {
    std::optional<Model> model;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return model.has_value(); }
};

enum class DocumentKind { Platform, Application };

/// Reads the top-level "kind" discriminator without validating the rest.
std::optional<DocumentKind> sniff_kind(std::string_view text);

ParseResult<PlatformModel> parse_platform(std::string_view text);
ParseResult<ApplicationModel> parse_application(std::string_view text);

/// Canonical form: schema key order, declaration-ordered lists, 2-space indent, LF, trailing newline.
std::string serialize_platform(const PlatformModel& model);
std::string serialize_application(const ApplicationModel& model);

}  // namespace prt
