#pragma once

// Retargeting of application models between platforms: type matching by kind and
// classification tags, role-driven feature weaving, and value conversion.

#include "prt/model.hpp"
#include "prt/validate.hpp"

#include <string>
#include <variant>
#include <vector>

namespace prt {

namespace ecode {
inline constexpr std::string_view OutOfRange = "E301";
inline constexpr std::string_view UnparseableString = "E302";
inline constexpr std::string_view NoEnumLiteral = "E303";
inline constexpr std::string_view IncompatibleBases = "E304";
inline constexpr std::string_view MissingRange = "E305";
inline constexpr std::string_view PreconditionFailed = "E310";
inline constexpr std::string_view StrictModeViolation = "E311";
inline constexpr std::string_view OutputInvalid = "E312";
}  // namespace ecode

namespace wcode {
inline constexpr std::string_view ExtraSourceFeatures = "W201";
inline constexpr std::string_view PrioritySemantics = "W202";
inline constexpr std::string_view AmbiguousTarget = "W203";
inline constexpr std::string_view ExtraTargetFeatures = "W204";
inline constexpr std::string_view DroppedSlot = "W205";
inline constexpr std::string_view PlatformFeatureDependency = "W206";
}  // namespace wcode

struct Error {
    std::string code;
    std::string message;
    /// Underlying diagnostics, one rendered line each (precondition and output checks).
    std::vector<std::string> details;
};

template <typename T>
class Result {
public:
    Result(T value) : data_(std::move(value)) {}
    Result(Error error) : data_(std::move(error)) {}

    bool ok() const { return data_.index() == 0; }
    explicit operator bool() const { return ok(); }
    const T& value() const { return std::get<0>(data_); }
    T& value() { return std::get<0>(data_); }
    const T& operator*() const { return value(); }
    const T* operator->() const { return &value(); }
    const Error& error() const { return std::get<1>(data_); }

private:
    std::variant<T, Error> data_;
};

// ---------------------------------------------------------------------------
// Matching

enum class UnmatchedReason { NoKindMatch, TagMismatch };
std::string_view to_string(UnmatchedReason r);

struct FeaturePair {
    std::string source;
    std::string target;
    friend bool operator==(const FeaturePair&, const FeaturePair&) = default;
};

using RoleWeave = std::vector<std::pair<Role, std::vector<FeaturePair>>>;

struct TypePair {
    std::string source;
    std::string target;
    /// Only roles bound in both types; features paired positionally.
    RoleWeave roleWeave;

    const std::vector<FeaturePair>* weave_for(const Role& r) const;
    friend bool operator==(const TypePair&, const TypePair&) = default;
};

struct UnmatchedType {
    std::string name;
    UnmatchedReason reason;
    friend bool operator==(const UnmatchedType&, const UnmatchedType&) = default;
};

struct RetargetWarning {
    std::string code;
    std::string subject;
    std::string message;
    friend bool operator==(const RetargetWarning&, const RetargetWarning&) = default;
};

struct TypeMapping {
    std::vector<TypePair> pairs;
    std::vector<UnmatchedType> unmatchedSourceTypes;
    /// Pending W201/W203/W204 warnings; each subject starts with the source type name.
    std::vector<RetargetWarning> warnings;

    const TypePair* find(std::string_view sourceType) const;
};

enum class PriorityMode { Verbatim, Normalize };

/// Candidate ties always resolve to the lexicographically smallest target name.
struct RetargetPolicy {
    bool strict = false;
    PriorityMode priorityMode = PriorityMode::Verbatim;
};

TypeMapping match_types(const PlatformModel& src, const PlatformModel& tgt, const RetargetPolicy& policy = {});

// ---------------------------------------------------------------------------
// Values

/// Converts a value of srcType into tgtType. Identity when the two types are equal.
Result<Value> convert_value(const Value& v, const DataTypeDef& srcType, const DataTypeDef& tgtType);

/// Maps a priority by its urgency position in src onto the nearest value of tgt.
/// Ties round toward higher urgency; endpoints map exactly.
Result<std::int64_t> normalize_priority(std::int64_t v, const std::optional<PriorityRange>& src,
                                        const std::optional<PriorityRange>& tgt);

// ---------------------------------------------------------------------------
// Instances and applications

struct ValueConversion {
    std::string instance;
    std::string sourceFeature;
    std::string targetFeature;
    Value sourceValue;
    Value targetValue;
    friend bool operator==(const ValueConversion&, const ValueConversion&) = default;
};

struct SlotError {
    std::string code;
    std::string subject;
    std::string message;
};

struct RetargetedInstance {
    InstanceSpec instance;
    std::vector<RetargetWarning> warnings;
    std::vector<ValueConversion> conversions;
    std::vector<SlotError> errors;
};

struct Omitted {
    std::string reason;
};

using InstanceOutcome = std::variant<RetargetedInstance, Omitted>;

InstanceOutcome retarget_instance(const InstanceSpec& inst, const TypeMapping& mapping, const PlatformModel& src,
                                  const PlatformModel& tgt, const RetargetPolicy& policy);

struct MappedInstance {
    std::string name;
    std::string sourceType;
    std::string targetType;
    friend bool operator==(const MappedInstance&, const MappedInstance&) = default;
};

struct OmittedInstance {
    std::string name;
    std::string reason;
    friend bool operator==(const OmittedInstance&, const OmittedInstance&) = default;
};

struct RetargetReport {
    std::vector<MappedInstance> mappedInstances;
    std::vector<OmittedInstance> omittedInstances;
    std::vector<RetargetWarning> warnings;
    std::vector<ValueConversion> valueConversions;
    friend bool operator==(const RetargetReport&, const RetargetReport&) = default;
};

struct RetargetOutput {
    ApplicationModel application;
    RetargetReport report;
};

/// Full application retarget. On success the output conforms to tgt.
Result<RetargetOutput> retarget(const ApplicationModel& app, const PlatformModel& src, const PlatformModel& tgt,
                                const RetargetPolicy& policy = {});

// ---------------------------------------------------------------------------
// Machine-readable renderings (stable key order, 2-space indent, trailing LF)

std::string serialize_report(const RetargetReport& report);
std::string serialize_mapping(const TypeMapping& mapping);

}  // namespace prt
