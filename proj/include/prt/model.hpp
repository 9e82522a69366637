#pragma once

// In-memory description of execution platforms and of applications deployed on them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace prt {

/// Identifier syntax shared by every named element: [A-Za-z_][A-Za-z0-9_-]*.
bool is_identifier(std::string_view s);

/// Extension identifiers ("x-" followed by at least one identifier character).
bool is_extension_name(std::string_view s);

// ---------------------------------------------------------------------------
// Data types and values

enum class BaseType { Int, Uint, Float, Bool, String, Enum };

std::string_view to_string(BaseType b);
std::optional<BaseType> parse_base_type(std::string_view s);
bool is_numeric(BaseType b);

struct NumericRange {
    double min = 0;
    double max = 0;
    friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

struct DataTypeDef {
    std::string name;
    BaseType base = BaseType::Int;
    std::optional<int> bits;
    std::vector<std::string> enumLiterals;
    std::optional<NumericRange> range;

    /// Effective width: declared bits, else 64.
    int width() const { return bits.value_or(64); }
    bool has_literal(std::string_view lit) const;

    friend bool operator==(const DataTypeDef&, const DataTypeDef&) = default;
};

struct EnumLiteral {
    std::string name;
    friend bool operator==(const EnumLiteral&, const EnumLiteral&) = default;
};

/// Tagged slot/default value. Integer literals are read as Int; Uint is produced
/// by conversion into unsigned types (and by literals above INT64_MAX).
using Value = std::variant<std::int64_t, std::uint64_t, double, bool, std::string, EnumLiteral>;

std::string to_display(const Value& v);

/// True when v is an acceptable value of type t: base compatibility, bit-width
/// bounds and the declared range, or literal membership for enums.
bool conforms(const Value& v, const DataTypeDef& t);

// ---------------------------------------------------------------------------
// Resource taxonomy

enum class ResourceKind {
    SwSchedulableResource,
    MemoryPartition,
    InterruptResource,
    Alarm,
    MessageComResource,
    SharedDataResource,
    NotificationResource,
    MutualExclusionResource,
    MemoryBroker,
    Scheduler,
    DeviceBroker,
};

enum class ResourceFamily { Concurrent, Interaction, Broker };

inline constexpr ResourceKind kAllResourceKinds[] = {
    ResourceKind::SwSchedulableResource, ResourceKind::MemoryPartition,
    ResourceKind::InterruptResource,     ResourceKind::Alarm,
    ResourceKind::MessageComResource,    ResourceKind::SharedDataResource,
    ResourceKind::NotificationResource,  ResourceKind::MutualExclusionResource,
    ResourceKind::MemoryBroker,          ResourceKind::Scheduler,
    ResourceKind::DeviceBroker,
};

std::string_view to_string(ResourceKind k);
std::optional<ResourceKind> parse_resource_kind(std::string_view s);
ResourceFamily family(ResourceKind k);
std::string_view to_string(ResourceFamily f);

enum class OccurrenceKind { Periodic, Aperiodic, Sporadic };

std::string_view to_string(OccurrenceKind k);
std::optional<OccurrenceKind> parse_occurrence_kind(std::string_view s);

/// Value of an "x-" classification tag.
using TagValue = std::variant<bool, EnumLiteral>;

struct ClassificationTags {
    std::optional<OccurrenceKind> occurrenceKind;
    std::optional<bool> isPreemptable;
    /// Declaration order is kept for serialization; matching never depends on it.
    std::vector<std::pair<std::string, TagValue>> extra;

    friend bool operator==(const ClassificationTags&, const ClassificationTags&) = default;
};

// ---------------------------------------------------------------------------
// Roles

enum class RoleCategory { Attribute, Service, Dependency, Extension };

/// A semantic role: one of the fourteen standard roles or an "x-" extension.
class Role {
public:
    static std::optional<Role> parse(std::string_view name);
    static Role priorityElements() { return Role("priorityElements"); }
    static Role periodElements() { return Role("periodElements"); }
    static Role stackSizeElements() { return Role("stackSizeElements"); }
    static Role activateServices() { return Role("activateServices"); }
    static Role terminateServices() { return Role("terminateServices"); }
    static Role entryPoint() { return Role("entryPoint"); }

    const std::string& name() const { return name_; }
    RoleCategory category() const;
    bool binds_attributes() const;
    bool binds_services() const;

    friend bool operator==(const Role&, const Role&) = default;
    friend auto operator<=>(const Role&, const Role&) = default;

private:
    explicit Role(std::string name) : name_(std::move(name)) {}
    std::string name_;
};

/// The fourteen standard role names in vocabulary order.
const std::vector<std::string>& standard_role_names();

// ---------------------------------------------------------------------------
// Platform model

struct AttributeDef {
    std::string name;
    std::string type;
    std::optional<Value> defaultValue;
    friend bool operator==(const AttributeDef&, const AttributeDef&) = default;
};

struct ServiceParam {
    std::string name;
    std::string type;
    friend bool operator==(const ServiceParam&, const ServiceParam&) = default;
};

struct ServiceSignature {
    std::string name;
    std::vector<ServiceParam> params;
    std::optional<std::string> returns;
    friend bool operator==(const ServiceSignature&, const ServiceSignature&) = default;
};

using RoleBinding = std::pair<Role, std::vector<std::string>>;

struct ResourceType {
    std::string name;
    ResourceKind kind = ResourceKind::SwSchedulableResource;
    ClassificationTags tags;
    std::vector<AttributeDef> attributes;
    std::vector<ServiceSignature> services;
    std::vector<RoleBinding> roles;

    const AttributeDef* find_attribute(std::string_view n) const;
    const ServiceSignature* find_service(std::string_view n) const;
    bool has_feature(std::string_view n) const { return find_attribute(n) || find_service(n); }
    /// Roles (declaration order) whose binding list names the feature.
    std::vector<Role> roles_of(std::string_view feature) const;
    bool has_role(const Role& r) const;

    friend bool operator==(const ResourceType&, const ResourceType&) = default;
};

enum class PriorityDirection { Ascending, Descending };

std::string_view to_string(PriorityDirection d);
std::optional<PriorityDirection> parse_priority_direction(std::string_view s);

/// Numeric priority bounds. Ascending means larger numbers are more urgent.
struct PriorityRange {
    std::int64_t low = 0;
    std::int64_t high = 0;
    PriorityDirection direction = PriorityDirection::Ascending;

    std::int64_t lowest_urgency() const;
    std::int64_t highest_urgency() const;
    bool contains(std::int64_t v) const;

    friend bool operator==(const PriorityRange&, const PriorityRange&) = default;
};

struct PredefinedInstance {
    std::string name;
    std::string type;
    friend bool operator==(const PredefinedInstance&, const PredefinedInstance&) = default;
};

struct PlatformModel {
    std::string name;
    std::string apiLanguage;
    std::optional<PriorityRange> priorityRange;
    std::vector<DataTypeDef> dataTypes;
    std::vector<ResourceType> resourceTypes;
    std::vector<PredefinedInstance> predefinedInstances;

    const DataTypeDef* find_data_type(std::string_view n) const;
    const ResourceType* find_resource_type(std::string_view n) const;
    const PredefinedInstance* find_predefined(std::string_view n) const;

    friend bool operator==(const PlatformModel&, const PlatformModel&) = default;
};

// ---------------------------------------------------------------------------
// Application model

struct Dependency {
    Role role;
    /// "owner" or "owner.member".
    std::string target;
    friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// Splits "owner.member" into its parts; member is empty for a bare owner.
std::pair<std::string_view, std::string_view> split_target(std::string_view target);
bool is_valid_target(std::string_view target);

using Slot = std::pair<std::string, Value>;

struct InstanceSpec {
    std::string name;
    std::string typeName;
    std::vector<Slot> slots;
    std::vector<Dependency> dependencies;

    const Value* find_slot(std::string_view attr) const;

    friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

struct AppElement {
    std::string name;
    std::vector<std::string> routines;
    friend bool operator==(const AppElement&, const AppElement&) = default;
};

struct AppObject {
    std::string name;
    std::string element;
    friend bool operator==(const AppObject&, const AppObject&) = default;
};

struct ApplicationModel {
    std::string name;
    std::string platformName;
    std::vector<AppElement> appElements;
    std::vector<AppObject> appObjects;
    std::vector<InstanceSpec> resourceInstances;

    const AppElement* find_element(std::string_view n) const;
    const AppObject* find_object(std::string_view n) const;
    const InstanceSpec* find_instance(std::string_view n) const;

    friend bool operator==(const ApplicationModel&, const ApplicationModel&) = default;
};

// ---------------------------------------------------------------------------
// Queries

/// Features bound to role in declaration order; empty when the role is unbound.
std::vector<std::string> role_features(const ResourceType& rt, const Role& role);
std::vector<std::string> role_features(const ResourceType& rt, std::string_view role);

using TagEntry = std::pair<std::string, std::string>;

/// Every present boolean/enum tag as (name, rendered value), sorted by name.
std::vector<TagEntry> classification_signature(const ResourceType& rt);

}  // namespace prt
