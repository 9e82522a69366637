#include "prt/validate.hpp"

#include <algorithm>
#include <tuple>

namespace prt {

namespace {

class Collector {
public:
    void error(std::string_view code, std::string subject, std::string message) {
        out_.push_back({Severity::Error, std::string(code), std::move(subject), std::move(message)});
    }
    void warning(std::string_view code, std::string subject, std::string message) {
        out_.push_back({Severity::Warning, std::string(code), std::move(subject), std::move(message)});
    }

    std::vector<ValidationDiagnostic> take() {
        std::stable_sort(out_.begin(), out_.end(), [](const auto& a, const auto& b) {
            return std::tie(a.subject, a.code) < std::tie(b.subject, b.code);
        });
        return std::move(out_);
    }

private:
    std::vector<ValidationDiagnostic> out_;
};

void check_type_refs(const PlatformModel& p, const ResourceType& rt, Collector& c) {
    auto missing = [&](const std::string& type, std::string subject) {
        c.error(vcode::UnresolvedDataType, std::move(subject), "unknown data type '" + type + "'");
    };
    for (const auto& a : rt.attributes) {
        const auto* dt = p.find_data_type(a.type);
        if (!dt) {
            missing(a.type, rt.name + "." + a.name);
        } else if (a.defaultValue && !conforms(*a.defaultValue, *dt)) {
            c.error(vcode::UnresolvedDataType, rt.name + "." + a.name,
                    "default " + to_display(*a.defaultValue) + " does not conform to '" + dt->name + "'");
        }
    }
    for (const auto& s : rt.services) {
        for (const auto& prm : s.params)
            if (!p.find_data_type(prm.type)) missing(prm.type, rt.name + "." + s.name + "." + prm.name);
        if (s.returns && !p.find_data_type(*s.returns)) missing(*s.returns, rt.name + "." + s.name + ".returns");
    }
}

void check_roles(const ResourceType& rt, Collector& c) {
    for (const auto& [role, names] : rt.roles) {
        for (const auto& n : names) {
            const auto subject = rt.name + ".roles." + role.name() + "." + n;
            const bool is_attr = rt.find_attribute(n) != nullptr;
            const bool is_svc = rt.find_service(n) != nullptr;
            if (!is_attr && !is_svc) {
                c.error(vcode::BadRoleBinding, subject, role.name() + " names unknown feature '" + n + "'");
            } else if ((is_attr && !role.binds_attributes()) || (is_svc && !role.binds_services())) {
                c.error(vcode::BadRoleBinding, subject,
                        role.name() + " cannot bind " + (is_attr ? "attribute" : "service") + " '" + n + "'");
            }
        }
    }
}

}  // namespace

bool has_errors(const std::vector<ValidationDiagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const auto& d) { return d.severity == Severity::Error; });
}

std::vector<ValidationDiagnostic> validate_platform(const PlatformModel& p) {
    Collector c;
    for (const auto& rt : p.resourceTypes) {
        const bool concurrent = family(rt.kind) == ResourceFamily::Concurrent;
        if (rt.services.empty())
            c.error(vcode::NoServices, rt.name, "resource type offers no services");
        if (rt.tags.occurrenceKind && !concurrent)
            c.error(vcode::OccurrenceOnNonConcurrent, rt.name + ".tags.occurrenceKind",
                    "occurrenceKind is only meaningful on concurrent resources, not " +
                        std::string(to_string(rt.kind)));
        check_roles(rt, c);
        if (!role_features(rt, Role::periodElements()).empty() &&
            rt.tags.occurrenceKind != OccurrenceKind::Periodic)
            c.warning(vcode::PeriodWithoutPeriodic, rt.name + ".roles.periodElements",
                      "periodElements bound on a resource that is not periodic");
        check_type_refs(p, rt, c);
        if (concurrent && role_features(rt, Role::activateServices()).empty() && !rt.has_role(Role::entryPoint()))
            c.warning(vcode::NoActivation, rt.name,
                      "concurrent resource has neither activateServices nor an entryPoint");
    }
    for (const auto& pi : p.predefinedInstances) {
        if (!p.find_resource_type(pi.type))
            c.error(vcode::UnknownPredefinedType, "predefinedInstances." + pi.name,
                    "unknown resource type '" + pi.type + "'");
    }
    return c.take();
}

bool resolves(std::string_view target, const ApplicationModel& a, const PlatformModel& p) {
    auto [owner, member] = split_target(target);
    auto has_routine = [&](const AppElement* el) {
        return el && (member.empty() ||
                      std::find(el->routines.begin(), el->routines.end(), member) != el->routines.end());
    };
    auto has_feature = [&](std::string_view type) {
        const auto* rt = p.find_resource_type(type);
        return rt && (member.empty() || rt->has_feature(member));
    };
    if (const auto* obj = a.find_object(owner)) return has_routine(a.find_element(obj->element));
    if (const auto* el = a.find_element(owner)) return has_routine(el);
    if (const auto* inst = a.find_instance(owner)) return has_feature(inst->typeName);
    if (const auto* pi = p.find_predefined(owner)) return has_feature(pi->type);
    return false;
}

std::vector<ValidationDiagnostic> validate_application(const ApplicationModel& a, const PlatformModel& p) {
    Collector c;
    if (a.platformName != p.name)
        c.error(vcode::PlatformMismatch, "platform",
                "application targets '" + a.platformName + "' but was checked against '" + p.name + "'");
    for (const auto& inst : a.resourceInstances) {
        const auto* rt = p.find_resource_type(inst.typeName);
        if (!rt)
            c.error(vcode::UnknownInstanceType, inst.name,
                    "platform '" + p.name + "' has no resource type '" + inst.typeName + "'");
        if (rt) {
            for (const auto& [attr, value] : inst.slots) {
                const auto subject = inst.name + "." + attr;
                const auto* def = rt->find_attribute(attr);
                if (!def) {
                    c.error(vcode::UnknownSlot, subject, "'" + attr + "' is not an attribute of " + rt->name);
                    continue;
                }
                const auto* dt = p.find_data_type(def->type);
                if (dt && !conforms(value, *dt))
                    c.error(vcode::BadSlotValue, subject,
                            to_display(value) + " does not conform to '" + dt->name + "'");
            }
        }
        for (std::size_t i = 0; i < inst.dependencies.size(); ++i) {
            const auto& dep = inst.dependencies[i];
            const auto subject = inst.name + ".dependencies." + std::to_string(i);
            if (!resolves(dep.target, a, p))
                c.error(vcode::UnresolvedDependency, subject, "cannot resolve '" + dep.target + "'");
            if (rt && dep.role == Role::entryPoint() && family(rt->kind) != ResourceFamily::Concurrent)
                c.warning(vcode::EntryPointOnNonConcurrent, subject,
                          "entryPoint dependency on non-concurrent " + std::string(to_string(rt->kind)));
        }
    }
    return c.take();
}

}  // namespace prt
