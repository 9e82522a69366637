#include "prt/model.hpp"

#include "numeric.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace prt {

namespace {

bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9') || c == '-';
}

template <typename Vec>
auto find_named(const Vec& v, std::string_view n) -> decltype(&v.front()) {
    auto it = std::find_if(v.begin(), v.end(), [&](const auto& e) { return e.name == n; });
    return it == v.end() ? nullptr : &*it;
}

constexpr std::array<std::string_view, 11> kKindNames = {
    "SwSchedulableResource", "MemoryPartition",      "InterruptResource",
    "Alarm",                 "MessageComResource",   "SharedDataResource",
    "NotificationResource",  "MutualExclusionResource", "MemoryBroker",
    "Scheduler",             "DeviceBroker",
};

}  // namespace

bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s.front())) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

bool is_extension_name(std::string_view s) {
    return s.size() > 2 && s.substr(0, 2) == "x-" && std::all_of(s.begin(), s.end(), is_ident_char);
}

// ---------------------------------------------------------------------------

std::string_view to_string(BaseType b) {
    switch (b) {
        case BaseType::Int: return "int";
        case BaseType::Uint: return "uint";
        case BaseType::Float: return "float";
        case BaseType::Bool: return "bool";
        case BaseType::String: return "string";
        case BaseType::Enum: return "enum";
    }
    return "?";
}

std::optional<BaseType> parse_base_type(std::string_view s) {
    for (auto b : {BaseType::Int, BaseType::Uint, BaseType::Float, BaseType::Bool, BaseType::String,
                   BaseType::Enum})
        if (to_string(b) == s) return b;
    return std::nullopt;
}

bool is_numeric(BaseType b) {
    return b == BaseType::Int || b == BaseType::Uint || b == BaseType::Float;
}

bool DataTypeDef::has_literal(std::string_view lit) const {
    return std::find(enumLiterals.begin(), enumLiterals.end(), lit) != enumLiterals.end();
}

std::string to_display(const Value& v) {
    struct Visitor {
        std::string operator()(std::int64_t i) const { return std::to_string(i); }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(double d) const {
            std::array<char, 32> buf{};
            auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
            return std::string(buf.data(), end);
        }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return '"' + s + '"'; }
        std::string operator()(const EnumLiteral& e) const { return e.name; }
    };
    return std::visit(Visitor{}, v);
}

bool conforms(const Value& v, const DataTypeDef& t) {
    using namespace detail;
    switch (t.base) {
        case BaseType::Int:
        case BaseType::Uint: {
            auto i = integer_of(v);
            return i && integer_fits(*i, t);
        }
        case BaseType::Float: {
            if (auto d = float_of(v)) return float_fits(*d, t);
            if (auto i = integer_of(v)) {
                const auto d = static_cast<double>(*i);
                return static_cast<Wide>(d) == *i && float_fits(d, t);
            }
            return false;
        }
        case BaseType::Bool: return std::holds_alternative<bool>(v);
        case BaseType::String: return std::holds_alternative<std::string>(v);
        case BaseType::Enum:
            if (auto* e = std::get_if<EnumLiteral>(&v)) return t.has_literal(e->name);
            if (auto* s = std::get_if<std::string>(&v)) return t.has_literal(*s);
            return false;
    }
    return false;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ResourceKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<ResourceKind> parse_resource_kind(std::string_view s) {
    for (auto k : kAllResourceKinds)
        if (to_string(k) == s) return k;
    return std::nullopt;
}

ResourceFamily family(ResourceKind k) {
    switch (k) {
        case ResourceKind::SwSchedulableResource:
        case ResourceKind::MemoryPartition:
        case ResourceKind::InterruptResource:
        case ResourceKind::Alarm: return ResourceFamily::Concurrent;
        case ResourceKind::MessageComResource:
        case ResourceKind::SharedDataResource:
        case ResourceKind::NotificationResource:
        case ResourceKind::MutualExclusionResource: return ResourceFamily::Interaction;
        case ResourceKind::MemoryBroker:
        case ResourceKind::Scheduler:
        case ResourceKind::DeviceBroker: return ResourceFamily::Broker;
    }
    return ResourceFamily::Broker;
}

std::string_view to_string(ResourceFamily f) {
    switch (f) {
        case ResourceFamily::Concurrent: return "Concurrent";
        case ResourceFamily::Interaction: return "Interaction";
        case ResourceFamily::Broker: return "Broker";
    }
    return "?";
}

std::string_view to_string(OccurrenceKind k) {
    switch (k) {
        case OccurrenceKind::Periodic: return "periodic";
        case OccurrenceKind::Aperiodic: return "aperiodic";
        case OccurrenceKind::Sporadic: return "sporadic";
    }
    return "?";
}

std::optional<OccurrenceKind> parse_occurrence_kind(std::string_view s) {
    for (auto k : {OccurrenceKind::Periodic, OccurrenceKind::Aperiodic, OccurrenceKind::Sporadic})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& standard_role_names() {
    static const std::vector<std::string> names = {
        "priorityElements", "periodElements",  "stackSizeElements", "activateServices",
        "suspendServices",  "resumeServices",  "terminateServices", "entryPoint",
        "sendServices",     "receiveServices", "acquireServices",   "releaseServices",
        "notifyServices",   "waitServices",
    };
    return names;
}

std::optional<Role> Role::parse(std::string_view name) {
    const auto& std_names = standard_role_names();
    if (std::find(std_names.begin(), std_names.end(), name) != std_names.end() ||
        is_extension_name(name))
        return Role(std::string(name));
    return std::nullopt;
}

RoleCategory Role::category() const {
    if (is_extension_name(name_)) return RoleCategory::Extension;
    if (name_ == "entryPoint") return RoleCategory::Dependency;
    if (name_.ends_with("Services")) return RoleCategory::Service;
    return RoleCategory::Attribute;
}

// Dependency and extension roles may reference either feature category.
bool Role::binds_attributes() const { return category() != RoleCategory::Service; }
bool Role::binds_services() const { return category() != RoleCategory::Attribute; }

// ---------------------------------------------------------------------------

const AttributeDef* ResourceType::find_attribute(std::string_view n) const {
    return find_named(attributes, n);
}

const ServiceSignature* ResourceType::find_service(std::string_view n) const {
    return find_named(services, n);
}

std::vector<Role> ResourceType::roles_of(std::string_view feature) const {
    std::vector<Role> out;
    for (const auto& [role, names] : roles)
        if (std::find(names.begin(), names.end(), feature) != names.end()) out.push_back(role);
    return out;
}

bool ResourceType::has_role(const Role& r) const {
    return std::any_of(roles.begin(), roles.end(), [&](const auto& b) { return b.first == r; });
}

std::string_view to_string(PriorityDirection d) {
    return d == PriorityDirection::Ascending ? "ascending" : "descending";
}

std::optional<PriorityDirection> parse_priority_direction(std::string_view s) {
    if (s == "ascending") return PriorityDirection::Ascending;
    if (s == "descending") return PriorityDirection::Descending;
    return std::nullopt;
}

std::int64_t PriorityRange::lowest_urgency() const {
    const auto lo = std::min(low, high), hi = std::max(low, high);
    return direction == PriorityDirection::Ascending ? lo : hi;
}

std::int64_t PriorityRange::highest_urgency() const {
    const auto lo = std::min(low, high), hi = std::max(low, high);
    return direction == PriorityDirection::Ascending ? hi : lo;
}

bool PriorityRange::contains(std::int64_t v) const {
    return v >= std::min(low, high) && v <= std::max(low, high);
}

const DataTypeDef* PlatformModel::find_data_type(std::string_view n) const {
    return find_named(dataTypes, n);
}

const ResourceType* PlatformModel::find_resource_type(std::string_view n) const {
    return find_named(resourceTypes, n);
}

const PredefinedInstance* PlatformModel::find_predefined(std::string_view n) const {
    return find_named(predefinedInstances, n);
}

// ---------------------------------------------------------------------------

std::pair<std::string_view, std::string_view> split_target(std::string_view target) {
    const auto dot = target.find('.');
    if (dot == std::string_view::npos) return {target, {}};
    return {target.substr(0, dot), target.substr(dot + 1)};
}

bool is_valid_target(std::string_view target) {
    const auto dot = target.find('.');
    if (dot == std::string_view::npos) return is_identifier(target);
    return is_identifier(target.substr(0, dot)) && is_identifier(target.substr(dot + 1));
}

const Value* InstanceSpec::find_slot(std::string_view attr) const {
    auto it = std::find_if(slots.begin(), slots.end(), [&](const Slot& s) { return s.first == attr; });
    return it == slots.end() ? nullptr : &it->second;
}

const AppElement* ApplicationModel::find_element(std::string_view n) const {
    return find_named(appElements, n);
}

const AppObject* ApplicationModel::find_object(std::string_view n) const {
    return find_named(appObjects, n);
}

const InstanceSpec* ApplicationModel::find_instance(std::string_view n) const {
    return find_named(resourceInstances, n);
}

// ---------------------------------------------------------------------------

std::vector<std::string> role_features(const ResourceType& rt, const Role& role) {
    for (const auto& [r, names] : rt.roles)
        if (r == role) return names;
    return {};
}

std::vector<std::string> role_features(const ResourceType& rt, std::string_view role) {
    auto r = Role::parse(role);
    return r ? role_features(rt, *r) : std::vector<std::string>{};
}

std::vector<TagEntry> classification_signature(const ResourceType& rt) {
    std::vector<TagEntry> sig;
    const auto& t = rt.tags;
    if (t.occurrenceKind) sig.emplace_back("occurrenceKind", std::string(to_string(*t.occurrenceKind)));
    if (t.isPreemptable) sig.emplace_back("isPreemptable", *t.isPreemptable ? "true" : "false");
    for (const auto& [key, value] : t.extra) {
        if (auto* b = std::get_if<bool>(&value))
            sig.emplace_back(key, *b ? "true" : "false");
        else
            sig.emplace_back(key, std::get<EnumLiteral>(value).name);
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

}  // namespace prt
