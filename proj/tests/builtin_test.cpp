#include "prt/builtin.hpp"
#include "prt/io.hpp"
#include "prt/validate.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <set>
#include <thread>

using namespace prt;

TEST_CASE("bundled platforms") {
    CHECK(builtin_names() == std::vector<std::string>{"osek-mini", "arinc653-mini", "posix-mini"});
    for (const auto& n : builtin_names()) {
        CAPTURE(n);
        const auto& p = builtin(n);
        CHECK(p.name == n);
        CHECK(validate_platform(p).empty());
        std::set<ResourceFamily> families;
        for (const auto& rt : p.resourceTypes) families.insert(family(rt.kind));
        CHECK(families.size() == 3);
        // The embedded copy and the installed file describe the same model.
        auto from_file = parse_platform(testing::read_file(testing::source_path("platforms/" + n + ".pm.json")));
        REQUIRE(from_file.ok());
        CHECK(*from_file.model == p);
        CHECK(*builtin_document(n) == testing::read_file(testing::source_path("platforms/" + n + ".pm.json")));
    }
}

TEST_CASE("osek BasicTask content") {
    const auto* task = builtin("osek-mini").find_resource_type("BasicTask");
    REQUIRE(task);
    CHECK(task->tags.occurrenceKind == OccurrenceKind::Aperiodic);
    CHECK(role_features(*task, Role::activateServices()) == std::vector<std::string>{"ActivateTask", "ChainTask"});
    CHECK(role_features(*task, Role::terminateServices()) == std::vector<std::string>{"TerminateTask", "ChainTask"});
    CHECK(role_features(*task, Role::priorityElements()) == std::vector<std::string>{"Priority"});
    CHECK(role_features(*task, Role::stackSizeElements()) == std::vector<std::string>{"StackSize"});
}

TEST_CASE("arinc Process content") {
    const auto* process = builtin("arinc653-mini").find_resource_type("Process");
    REQUIRE(process);
    CHECK(process->kind == ResourceKind::SwSchedulableResource);
    CHECK(role_features(*process, Role::priorityElements()) == std::vector<std::string>{"prio"});
}

TEST_CASE("unknown builtin") {
    CHECK_THROWS_AS(builtin("nosuch"), UnknownBuiltin);
    CHECK_FALSE(builtin_document("nosuch").has_value());
}

TEST_CASE("concurrent first access") {
    std::vector<const PlatformModel*> seen(8);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < seen.size(); ++i)
        threads.emplace_back([&seen, i] { seen[i] = &builtin(builtin_names()[i % 3]); });
    for (auto& t : threads) t.join();
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == &builtin(builtin_names()[i % 3]));
}
