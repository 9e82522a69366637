#include "prt/engine.hpp"

#include "numeric.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace prt {

namespace {

const DataTypeDef& wide_int_type() {
    static const DataTypeDef t{"int64", BaseType::Int, 64, {}, std::nullopt};
    return t;
}

std::string render(const ValidationDiagnostic& d) {
    return std::string(d.severity == Severity::Error ? "ERROR " : "WARNING ") + d.code + " " + d.subject + ": " +
           d.message;
}

void append_rendered(std::vector<std::string>& out, const std::vector<ValidationDiagnostic>& diags,
                     std::string_view prefix) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) out.push_back(std::string(prefix) + render(d));
}

Result<Value> transfer(const Value& v, const Role& role, const DataTypeDef& srcType, const DataTypeDef& tgtType,
                       const PlatformModel& src, const PlatformModel& tgt, const RetargetPolicy& policy) {
    if (role != Role::priorityElements() || policy.priorityMode != PriorityMode::Normalize)
        return convert_value(v, srcType, tgtType);
    const auto integer = detail::integer_of(v);
    if (!integer || (srcType.base != BaseType::Int && srcType.base != BaseType::Uint))
        return Error{std::string(ecode::IncompatibleBases), "priority normalization needs an integer priority", {}};
    if (*integer > std::numeric_limits<std::int64_t>::max())
        return Error{std::string(ecode::OutOfRange), to_display(v) + " exceeds the priority range", {}};
    auto normalized = normalize_priority(static_cast<std::int64_t>(*integer), src.priorityRange, tgt.priorityRange);
    if (!normalized) return normalized.error();
    return convert_value(Value{std::in_place_type<std::int64_t>, *normalized}, wide_int_type(), tgtType);
}

bool mentions_type(const RetargetWarning& w, const std::string& type) {
    return w.subject == type || (w.subject.size() > type.size() && w.subject.compare(0, type.size(), type) == 0 &&
                                 w.subject[type.size()] == '.');
}

}  // namespace

InstanceOutcome retarget_instance(const InstanceSpec& inst, const TypeMapping& mapping, const PlatformModel& src,
                                  const PlatformModel& tgt, const RetargetPolicy& policy) {
    const auto* pair = mapping.find(inst.typeName);
    const auto* srcType = src.find_resource_type(inst.typeName);
    const auto* tgtType = pair ? tgt.find_resource_type(pair->target) : nullptr;
    if (!pair || !srcType || !tgtType) return Omitted{"NoTargetType"};

    RetargetedInstance out;
    out.instance = InstanceSpec{inst.name, tgtType->name, {}, inst.dependencies};
    // target attribute -> source attribute that filled it
    std::vector<std::pair<std::string, std::string>> filled_from;
    auto filler = [&](const std::string& target) -> const std::string* {
        for (const auto& [t, s] : filled_from)
            if (t == target) return &s;
        return nullptr;
    };

    for (const auto& [attr, value] : inst.slots) {
        const auto subject = inst.name + "." + attr;
        const auto roles = srcType->roles_of(attr);
        if (roles.empty()) {
            out.warnings.push_back({std::string(wcode::DroppedSlot), subject,
                                    "'" + attr + "' is bound to no role and is not transferred"});
            continue;
        }
        const auto* srcAttr = srcType->find_attribute(attr);
        const auto* srcData = srcAttr ? src.find_data_type(srcAttr->type) : nullptr;
        bool handled = false;
        for (const auto& role : roles) {
            const auto* woven = pair->weave_for(role);
            if (!woven) continue;
            auto it = std::find_if(woven->begin(), woven->end(), [&](const FeaturePair& f) { return f.source == attr; });
            if (it == woven->end()) continue;
            const auto* tgtAttr = tgtType->find_attribute(it->target);
            const auto* tgtData = tgtAttr ? tgt.find_data_type(tgtAttr->type) : nullptr;
            if (!tgtData || !srcData) continue;
            handled = true;
            if (const auto* prior = filler(tgtAttr->name)) {
                if (*prior != attr)
                    out.warnings.push_back({std::string(wcode::ExtraSourceFeatures), subject,
                                            "'" + tgtAttr->name + "' already filled from '" + *prior + "'"});
                continue;
            }
            auto converted = transfer(value, role, *srcData, *tgtData, src, tgt, policy);
            if (!converted) {
                out.errors.push_back({converted.error().code, subject,
                                      "cannot transfer to " + tgtType->name + "." + tgtAttr->name + ": " +
                                          converted.error().message});
                continue;
            }
            filled_from.emplace_back(tgtAttr->name, attr);
            out.instance.slots.emplace_back(tgtAttr->name, *converted);
            out.conversions.push_back({inst.name, attr, tgtAttr->name, value, *converted});
            if (role == Role::priorityElements() && policy.priorityMode == PriorityMode::Verbatim &&
                src.name != tgt.name)
                out.warnings.push_back({std::string(wcode::PrioritySemantics), inst.name + "." + tgtAttr->name,
                                        "priority copied verbatim from " + src.name + "." + srcType->name + "." +
                                            attr + "; urgency equivalence is not guaranteed"});
        }
        if (!handled) {
            std::string names;
            for (const auto& r : roles) names += (names.empty() ? "" : ", ") + r.name();
            out.warnings.push_back({std::string(wcode::DroppedSlot), subject,
                                    "role(s) " + names + " not woven into " + tgtType->name + "; slot dropped"});
        }
    }
    return out;
}

Result<RetargetOutput> retarget(const ApplicationModel& app, const PlatformModel& src, const PlatformModel& tgt,
                                const RetargetPolicy& policy) {
    {
        std::vector<std::string> problems;
        append_rendered(problems, validate_platform(src), "source platform: ");
        append_rendered(problems, validate_platform(tgt), "target platform: ");
        append_rendered(problems, validate_application(app, src), "application: ");
        if (!problems.empty())
            return Error{std::string(ecode::PreconditionFailed), "inputs do not validate", std::move(problems)};
    }

    const auto mapping = match_types(src, tgt, policy);
    RetargetOutput result;
    auto& out = result.application;
    auto& report = result.report;
    out.name = app.name;
    out.platformName = tgt.name;
    out.appElements = app.appElements;
    out.appObjects = app.appObjects;

    std::set<std::string> used_types;
    for (const auto& inst : app.resourceInstances) {
        if (!used_types.insert(inst.typeName).second) continue;
        for (const auto& w : mapping.warnings)
            if (mentions_type(w, inst.typeName)) report.warnings.push_back(w);
    }

    std::vector<InstanceOutcome> outcomes;
    std::set<std::string> omitted;
    for (const auto& inst : app.resourceInstances) {
        outcomes.push_back(retarget_instance(inst, mapping, src, tgt, policy));
        if (std::holds_alternative<Omitted>(outcomes.back())) omitted.insert(inst.name);
    }

    std::vector<std::string> violations;
    for (std::size_t n = 0; n < app.resourceInstances.size(); ++n) {
        const auto& inst = app.resourceInstances[n];
        if (auto* skipped = std::get_if<Omitted>(&outcomes[n])) {
            report.omittedInstances.push_back({inst.name, skipped->reason});
            violations.push_back(inst.name + " omitted (" + skipped->reason + ")");
            continue;
        }
        auto& done = std::get<RetargetedInstance>(outcomes[n]);
        report.mappedInstances.push_back({inst.name, inst.typeName, done.instance.typeName});
        report.warnings.insert(report.warnings.end(), done.warnings.begin(), done.warnings.end());
        for (auto& e : done.errors) {
            violations.push_back(e.code + " " + e.subject + ": " + e.message);
            report.warnings.push_back({e.code, e.subject, e.message});
        }

        std::vector<Dependency> kept;
        for (std::size_t i = 0; i < inst.dependencies.size(); ++i) {
            const auto& dep = inst.dependencies[i];
            const auto subject = inst.name + ".dependencies." + std::to_string(i);
            auto [owner, member] = split_target(dep.target);
            const std::string owner_name(owner);
            const bool app_owned = app.find_object(owner) || app.find_element(owner);
            if (omitted.count(owner_name) ||
                (!app_owned && !app.find_instance(owner) && src.find_predefined(owner) && !tgt.find_predefined(owner))) {
                report.warnings.push_back({std::string(wcode::DroppedSlot), subject,
                                           "'" + dep.target + "' has no counterpart on " + tgt.name +
                                               "; dependency dropped"});
                continue;
            }
            kept.push_back(dep);
            if (member.empty() || app_owned) continue;
            const ResourceType* ownerType = nullptr;
            if (const auto* other = app.find_instance(owner))
                ownerType = src.find_resource_type(other->typeName);
            else if (const auto* pi = src.find_predefined(owner))
                ownerType = src.find_resource_type(pi->type);
            if (ownerType && ownerType->has_feature(member))
                report.warnings.push_back({std::string(wcode::PlatformFeatureDependency), subject,
                                           "'" + dep.target + "' names " + src.name + " feature " + ownerType->name +
                                               "." + std::string(member) + "; copied verbatim"});
        }
        done.instance.dependencies = std::move(kept);
        out.resourceInstances.push_back(std::move(done.instance));
        report.valueConversions.insert(report.valueConversions.end(), done.conversions.begin(),
                                       done.conversions.end());
    }

    if (policy.strict && !violations.empty())
        return Error{std::string(ecode::StrictModeViolation), "strict retarget is incomplete", std::move(violations)};

    const auto check = validate_application(out, tgt);
    if (has_errors(check)) {
        std::vector<std::string> details;
        append_rendered(details, check, "");
        return Error{std::string(ecode::OutputInvalid), "retargeted application does not conform to " + tgt.name,
                     std::move(details)};
    }
    return result;
}

}  // namespace prt
