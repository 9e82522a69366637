#pragma once

#include "prt/io.hpp"
#include "prt/model.hpp"

#include <string>
#include <vector>

namespace prt {

/// Fixed rule catalog. V0xx apply to platforms, V1xx to applications.
namespace vcode {
inline constexpr std::string_view NoServices = "V001";
inline constexpr std::string_view BadRoleBinding = "V002";
inline constexpr std::string_view OccurrenceOnNonConcurrent = "V003";
inline constexpr std::string_view PeriodWithoutPeriodic = "V004";
inline constexpr std::string_view UnresolvedDataType = "V005";
inline constexpr std::string_view UnknownPredefinedType = "V006";
inline constexpr std::string_view NoActivation = "V007";

inline constexpr std::string_view PlatformMismatch = "V101";
inline constexpr std::string_view UnknownInstanceType = "V102";
inline constexpr std::string_view UnknownSlot = "V103";
inline constexpr std::string_view BadSlotValue = "V104";
inline constexpr std::string_view UnresolvedDependency = "V105";
inline constexpr std::string_view EntryPointOnNonConcurrent = "V106";
}  // namespace vcode

struct ValidationDiagnostic {
    Severity severity = Severity::Error;
    std::string code;
    /// Dotted path to the offending element, e.g. "BasicTask.roles.priorityElements".
    std::string subject;
    std::string message;

    friend bool operator==(const ValidationDiagnostic&, const ValidationDiagnostic&) = default;
};

/// Platform well-formedness. Sorted by (subject, code); empty iff every rule passes.
std::vector<ValidationDiagnostic> validate_platform(const PlatformModel& p);

/// Conformance of an application to the platform it claims to target.
std::vector<ValidationDiagnostic> validate_application(const ApplicationModel& a, const PlatformModel& p);

bool has_errors(const std::vector<ValidationDiagnostic>& diags);

/// Resolves an "owner[.member]" dependency target against an application and its platform.
bool resolves(std::string_view target, const ApplicationModel& a, const PlatformModel& p);

}  // namespace prt
