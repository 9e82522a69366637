#include "prt/builtin.hpp"
#include "prt/io.hpp"
#include "prt/validate.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>

using namespace prt;
using testing::read_file;
using testing::source_path;

namespace {

std::vector<std::string> codes(const std::vector<ValidationDiagnostic>& diags) {
    std::vector<std::string> out;
    for (const auto& d : diags) out.push_back(d.code);
    return out;
}

ApplicationModel robot() { return *parse_application(read_file(source_path("fixtures/robot.app.json"))).model; }

PlatformModel osek() { return builtin("osek-mini"); }

ResourceType& type_named(PlatformModel& p, std::string_view name) {
    return *std::find_if(p.resourceTypes.begin(), p.resourceTypes.end(),
                         [&](const ResourceType& t) { return t.name == name; });
}

/// Exhaustive scan for a dependency target across every named thing reachable from a and p.
bool exhaustive_resolves(const std::string& target, const ApplicationModel& a, const PlatformModel& p) {
    std::vector<std::string> names;
    for (const auto& e : a.appElements) {
        names.push_back(e.name);
        for (const auto& r : e.routines) names.push_back(e.name + "." + r);
    }
    for (const auto& o : a.appObjects) {
        names.push_back(o.name);
        for (const auto& e : a.appElements)
            if (e.name == o.element)
                for (const auto& r : e.routines) names.push_back(o.name + "." + r);
    }
    auto add_typed = [&](const std::string& owner, const std::string& type) {
        names.push_back(owner);
        for (const auto& rt : p.resourceTypes) {
            if (rt.name != type) continue;
            for (const auto& at : rt.attributes) names.push_back(owner + "." + at.name);
            for (const auto& s : rt.services) names.push_back(owner + "." + s.name);
        }
    };
    for (const auto& i : a.resourceInstances) add_typed(i.name, i.typeName);
    for (const auto& pi : p.predefinedInstances) add_typed(pi.name, pi.type);
    return std::find(names.begin(), names.end(), target) != names.end();
}

}  // namespace

TEST_CASE("builtins and clean fixtures validate") {
    for (const auto& n : builtin_names()) {
        CAPTURE(n);
        CHECK(validate_platform(builtin(n)).empty());
    }
    CHECK(validate_application(robot(), osek()).empty());
}

TEST_CASE("platform rule catalog") {
    SUBCASE("serviceless type") {
        auto r = parse_platform(read_file(source_path("fixtures/broken.pm.json")));
        REQUIRE(r.ok());
        const auto d = validate_platform(*r.model);
        REQUIRE(codes(d) == std::vector<std::string>{"V001"});
        CHECK(d[0].severity == Severity::Error);
        CHECK(d[0].subject == "Lock");
    }
    SUBCASE("occurrence kind on a message resource") {
        auto p = osek();
        ResourceType q{"Queue", ResourceKind::MessageComResource, {}, {}, {{"send", {}, std::nullopt}}, {}};
        q.tags.occurrenceKind = OccurrenceKind::Periodic;
        p.resourceTypes.push_back(q);
        CHECK(codes(validate_platform(p)) == std::vector<std::string>{"V003"});
    }
    SUBCASE("mis-categorized binding") {
        auto p = osek();
        type_named(p, "BasicTask").roles.emplace_back(Role::periodElements(), std::vector<std::string>{"ActivateTask"});
        type_named(p, "BasicTask").tags.occurrenceKind = OccurrenceKind::Periodic;
        const auto d = validate_platform(p);
        REQUIRE(codes(d) == std::vector<std::string>{"V002"});
        CHECK(d[0].subject == "BasicTask.roles.periodElements.ActivateTask");
    }
    SUBCASE("period bound on an aperiodic type") {
        auto p = osek();
        type_named(p, "BasicTask").roles.emplace_back(Role::periodElements(), std::vector<std::string>{"Priority"});
        const auto d = validate_platform(p);
        REQUIRE(codes(d) == std::vector<std::string>{"V004"});
        CHECK(d[0].severity == Severity::Warning);
    }
    SUBCASE("unresolved data type") {
        auto p = osek();
        type_named(p, "BasicTask").attributes.push_back({"Deadline", "TimeType", std::nullopt});
        const auto d = validate_platform(p);
        REQUIRE(codes(d) == std::vector<std::string>{"V005"});
        CHECK(d[0].subject == "BasicTask.Deadline");
    }
    SUBCASE("default outside its type") {
        auto p = osek();
        type_named(p, "BasicTask").attributes[0].defaultValue = Value{std::in_place_type<std::string>, "x"};
        CHECK(codes(validate_platform(p)) == std::vector<std::string>{"V005"});
    }
    SUBCASE("predefined instance of unknown type") {
        auto p = osek();
        p.predefinedInstances.push_back({"IDLE", "IdleTask"});
        CHECK(codes(validate_platform(p)) == std::vector<std::string>{"V006"});
    }
    SUBCASE("concurrent type without activation") {
        auto p = osek();
        auto& roles = type_named(p, "BasicTask").roles;
        roles.erase(std::remove_if(roles.begin(), roles.end(),
                                   [](const RoleBinding& b) { return b.first == Role::activateServices(); }),
                    roles.end());
        const auto d = validate_platform(p);
        REQUIRE(codes(d) == std::vector<std::string>{"V007"});
        CHECK(d[0].severity == Severity::Warning);
    }
}

TEST_CASE("application rule catalog") {
    const auto p = osek();
    SUBCASE("platform mismatch") {
        auto a = robot();
        a.platformName = "posix-mini";
        CHECK(codes(validate_application(a, p)) == std::vector<std::string>{"V101"});
    }
    SUBCASE("unknown instance type") {
        auto a = robot();
        a.resourceInstances[0].typeName = "ExtendedTask";
        CHECK(codes(validate_application(a, p)) == std::vector<std::string>{"V102"});
    }
    SUBCASE("unknown slot") {
        auto a = robot();
        a.resourceInstances[0].slots.emplace_back("Deadline", std::int64_t{3});
        const auto d = validate_application(a, p);
        REQUIRE(codes(d) == std::vector<std::string>{"V103"});
        CHECK(d[0].subject == "t1.Deadline");
    }
    SUBCASE("string priority") {
        auto a = robot();
        a.resourceInstances[0].slots[0].second = Value{std::in_place_type<std::string>, "high"};
        const auto d = validate_application(a, p);
        REQUIRE(codes(d) == std::vector<std::string>{"V104"});
        CHECK(d[0].subject == "t1.Priority");
    }
    SUBCASE("priority beyond int32") {
        auto a = robot();
        a.resourceInstances[0].slots[0].second = std::int64_t{1} << 31;
        CHECK(codes(validate_application(a, p)) == std::vector<std::string>{"V104"});
    }
    SUBCASE("dangling dependency") {
        auto a = robot();
        a.resourceInstances[0].dependencies[0].target = "C9.trajectoryControl";
        const auto d = validate_application(a, p);
        REQUIRE(codes(d) == std::vector<std::string>{"V105"});
        CHECK(d[0].subject == "t1.dependencies.0");
    }
    SUBCASE("entry point on an interaction instance") {
        auto a = robot();
        a.resourceInstances.push_back({"lock", "Resource", {}, {{Role::entryPoint(), "C1.trajectoryControl"}}});
        const auto d = validate_application(a, p);
        REQUIRE(codes(d) == std::vector<std::string>{"V106"});
        CHECK(d[0].severity == Severity::Warning);
    }
}

TEST_CASE("dependency resolution agrees with an exhaustive scan") {
    auto a = *parse_application(read_file(source_path("fixtures/robot-full.app.json"))).model;
    const auto p = osek();
    std::vector<std::string> probes = {"C1", "C1.trajectoryControl", "C1.sensorAcquisition", "C9.trajectoryControl",
                                       "Controller", "Controller.trajectoryControl", "t1", "t1.Priority",
                                       "t1.ActivateTask", "t1.Nothing", "ev.SetEvent", "RES_SCHEDULER",
                                       "RES_SCHEDULER.GetResource", "RES_SCHEDULER.Priority", "BasicTask", "lock"};
    for (const auto& target : probes) {
        CAPTURE(target);
        CHECK(resolves(target, a, p) == exhaustive_resolves(target, a, p));
    }
}

TEST_CASE("diagnostics are sorted and stable") {
    auto p = osek();
    p.predefinedInstances.push_back({"ZZ", "Nope"});
    p.predefinedInstances.push_back({"AA", "Nope"});
    type_named(p, "Alarm").services.clear();
    type_named(p, "BasicTask").attributes.push_back({"Deadline", "TimeType", std::nullopt});
    const auto d = validate_platform(p);
    CHECK(d.size() >= 4);
    CHECK(std::is_sorted(d.begin(), d.end(), [](const auto& x, const auto& y) {
        return std::tie(x.subject, x.code) < std::tie(y.subject, y.code);
    }));
    CHECK(validate_platform(p) == d);
}

TEST_CASE("removing the subject removes the diagnostic") {
    auto broken = *parse_platform(read_file(source_path("fixtures/broken.pm.json"))).model;
    broken.resourceTypes.erase(std::remove_if(broken.resourceTypes.begin(), broken.resourceTypes.end(),
                                              [](const ResourceType& t) { return t.name == "Lock"; }),
                               broken.resourceTypes.end());
    CHECK(validate_platform(broken).empty());

    auto p = osek();
    p.predefinedInstances.push_back({"IDLE", "IdleTask"});
    REQUIRE_FALSE(validate_platform(p).empty());
    p.predefinedInstances.pop_back();
    CHECK(validate_platform(p).empty());

    auto a = robot();
    a.resourceInstances[0].slots.emplace_back("Deadline", std::int64_t{3});
    REQUIRE_FALSE(validate_application(a, osek()).empty());
    a.resourceInstances[0].slots.pop_back();
    CHECK(validate_application(a, osek()).empty());
}

TEST_CASE("clean platforms satisfy the structural invariants") {
    testing::Gen g(5150);
    int mutated_clean = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = g.platform("m");
        CHECK(validate_platform(p).empty());
        // Random damage; whenever the validator still reports no errors the invariants must hold.
        if (!p.resourceTypes.empty()) {
            auto& rt = p.resourceTypes[static_cast<std::size_t>(g.between(0, static_cast<int>(p.resourceTypes.size()) - 1))];
            switch (g.between(0, 4)) {
                case 0: rt.services.clear(); break;
                case 1: rt.tags.occurrenceKind = OccurrenceKind::Sporadic; break;
                case 2:
                    if (!rt.attributes.empty()) rt.attributes[0].type = "missing";
                    break;
                case 3: rt.roles.emplace_back(Role::activateServices(), std::vector<std::string>{"ghost"}); break;
                default: p.predefinedInstances.push_back({"GHOST", "Missing"});
            }
        }
        if (!has_errors(validate_platform(p))) {
            ++mutated_clean;
            CHECK(testing::invariant_violations(p).empty());
        }
    }
    CHECK(mutated_clean < 200);
}

TEST_CASE("generated applications validate") {
    testing::Gen g(77);
    for (int i = 0; i < 100; ++i) {
        const auto p = g.platform("gp");
        const auto a = g.application(p);
        CHECK(codes(validate_application(a, p)).empty());
    }
}
