#include "prt/cli.hpp"
#include "support/oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using prt::testing::read_file;
using prt::testing::source_path;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = prt::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("prt-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const std::string robot = source_path("fixtures/robot.app.json");
const std::string robot_full = source_path("fixtures/robot-full.app.json");

}  // namespace

TEST_CASE("validate") {
    auto ok = run({"validate", source_path("platforms/osek-mini.pm.json")});
    CHECK(ok.status == 0);
    CHECK(ok.out.empty());

    CHECK(run({"validate", "posix-mini"}).status == 0);

    auto broken = run({"validate", source_path("fixtures/broken.pm.json")});
    CHECK(broken.status == 1);
    CHECK(broken.out.rfind("ERROR V001 Lock: ", 0) == 0);

    auto no_platform = run({"validate", robot});
    CHECK(no_platform.status == 2);
    CHECK(no_platform.err.find("--platform") != std::string::npos);

    CHECK(run({"validate", robot, "--platform", "osek-mini"}).status == 0);
    auto wrong = run({"validate", robot, "--platform", "arinc653-mini"});
    CHECK(wrong.status == 1);
    CHECK(wrong.out.find("V101") != std::string::npos);

    CHECK(run({"validate", "/nonexistent/file.json"}).status == 2);

    TempDir dir;
    {
        std::ofstream(dir / "bad.pm.json") << "{\"kind\": \"platform\", \"name\": \"p\", \"extra\": 1}";
    }
    auto bad = run({"validate", dir / "bad.pm.json"});
    CHECK(bad.status == 2);
    CHECK(bad.out.find("IO002 /extra") != std::string::npos);
}

TEST_CASE("validate json output parses") {
    auto r = run({"validate", source_path("fixtures/broken.pm.json"), "--format", "json"});
    CHECK(r.status == 1);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 1);
    CHECK(j[0]["code"] == "V001");
    CHECK(j[0]["severity"] == "error");
    CHECK(nlohmann::json::parse(run({"validate", "osek-mini", "--format", "json"}).out).empty());
}

TEST_CASE("match") {
    auto r = run({"match", "--from", "osek-mini", "--to", "arinc653-mini"});
    CHECK(r.status == 0);
    CHECK(r.out.find("BasicTask -> Process [roles: priorityElements Priority->prio") != std::string::npos);
    CHECK(r.out.find("Resource -> (unmatched: NoKindMatch)") != std::string::npos);

    auto self = run({"match", "--from", "osek-mini", "--to", "osek-mini"});
    std::istringstream lines(self.out);
    int count = 0;
    for (std::string line; std::getline(lines, line); ++count) {
        const auto arrow = line.find(" -> ");
        REQUIRE(arrow != std::string::npos);
        const auto src = line.substr(0, arrow);
        CHECK(line.compare(arrow + 4, src.size(), src) == 0);
    }
    CHECK(count == 5);

    auto toy = run({"match", "--from", "osek-mini", "--to", source_path("fixtures/toy-periodic.pm.json")});
    CHECK(toy.out.find("BasicTask -> (unmatched: TagMismatch)") != std::string::npos);

    auto json = run({"match", "--from", "osek-mini", "--to", "arinc653-mini", "--format", "json"});
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["pairs"][0]["source"] == "BasicTask");
    CHECK(j["pairs"][0]["roleWeave"]["priorityElements"][0]["target"] == "prio");

    CHECK(run({"match", "--from", source_path("fixtures/broken.pm.json"), "--to", "osek-mini"}).status == 2);
}

TEST_CASE("retarget writes output and report") {
    TempDir dir;
    auto r = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "arinc653-mini", "-o", dir / "out.json",
                  "--report", dir / "report.json"});
    CHECK(r.status == 0);
    CHECK(r.out.find("t1: BasicTask -> Process") != std::string::npos);
    CHECK(read_file(dir / "out.json") == read_file(source_path("fixtures/robot.arinc653.app.json")));
    CHECK(read_file(dir / "report.json") == read_file(source_path("fixtures/robot.arinc653.report.json")));
    CHECK_FALSE(fs::exists(dir / "out.json.tmp"));

    auto identity = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "osek-mini", "-o", dir / "same.json"});
    CHECK(identity.status == 0);
    CHECK(read_file(dir / "same.json") == read_file(robot));
    CHECK_FALSE(fs::exists(dir / "report.json.tmp"));
}

TEST_CASE("retarget failures") {
    TempDir dir;
    auto strict = run({"retarget", "--app", robot_full, "--from", "osek-mini", "--to", "arinc653-mini", "-o",
                       dir / "out.json", "--strict"});
    CHECK(strict.status == 1);
    CHECK(strict.err.find("E311") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out.json"));

    auto precondition = run({"retarget", "--app", robot, "--from", "posix-mini", "--to", "arinc653-mini", "-o",
                             dir / "out.json"});
    CHECK(precondition.status == 2);
    CHECK(precondition.err.find("E310") != std::string::npos);

    auto bad_mode = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "arinc653-mini", "-o",
                         dir / "out.json", "--priority-mode", "fancy"});
    CHECK(bad_mode.status == 2);

    auto missing_out = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "arinc653-mini"});
    CHECK(missing_out.status == 2);

    auto unwritable = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "arinc653-mini", "-o",
                           dir / "no/such/dir/out.json"});
    CHECK(unwritable.status == 2);
}

TEST_CASE("normalize mode through the cli") {
    TempDir dir;
    auto r = run({"retarget", "--app", robot, "--from", "osek-mini", "--to", "arinc653-mini", "-o", dir / "out.json",
                  "--priority-mode", "normalize"});
    CHECK(r.status == 0);
    CHECK(r.out.find("W202") == std::string::npos);
}

TEST_CASE("inspect") {
    auto summary = run({"inspect", "osek-mini"});
    CHECK(summary.status == 0);
    CHECK(summary.out.find("BasicTask: SwSchedulableResource [Concurrent] occurrenceKind=aperiodic") !=
          std::string::npos);
    auto detail = run({"inspect", "osek-mini", "--type", "BasicTask"});
    CHECK(detail.out.find("  role terminateServices: TerminateTask ChainTask") != std::string::npos);
    CHECK(run({"inspect", "osek-mini", "--type", "Nope"}).status == 2);
    CHECK(run({"inspect", "nosuch-platform"}).status == 2);
}

TEST_CASE("usage errors") {
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"match", "--from", "osek-mini", "--to", "osek-mini", "--bogus"}).status == 2);
    CHECK(run({"validate", "osek-mini", "--format", "xml"}).status == 2);
    CHECK(run({"--help"}).status == 0);
}

TEST_CASE("builtin directory override") {
    TempDir dir;
    fs::copy_file(source_path("fixtures/toy-periodic.pm.json"), dir / "osek-mini.pm.json");
    ::setenv("PLATFORM_RETARGET_BUILTIN_DIR", dir.path.c_str(), 1);
    auto overridden = run({"inspect", "osek-mini"});
    ::unsetenv("PLATFORM_RETARGET_BUILTIN_DIR");
    CHECK(overridden.out.find("CyclicTask") != std::string::npos);
    CHECK(run({"inspect", "osek-mini"}).out.find("BasicTask") != std::string::npos);

    // An existing file path beats a builtin of the same name.
    const auto cwd = fs::current_path();
    fs::current_path(dir.path);
    fs::copy_file(source_path("fixtures/toy-periodic.pm.json"), dir / "posix-mini");
    auto local = run({"inspect", "posix-mini"});
    fs::current_path(cwd);
    CHECK(local.out.find("CyclicTask") != std::string::npos);
}

TEST_CASE("commands are deterministic") {
    TempDir dir;
    const std::vector<std::vector<std::string>> commands = {
        {"validate", source_path("fixtures/broken.pm.json")},
        {"validate", robot_full, "--platform", "osek-mini", "--format", "json"},
        {"match", "--from", "osek-mini", "--to", "posix-mini"},
        {"match", "--from", "arinc653-mini", "--to", "osek-mini", "--format", "json"},
        {"inspect", "arinc653-mini", "--type", "Process"},
    };
    for (const auto& c : commands) {
        const auto a = run(c), b = run(c);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
    auto first = run({"retarget", "--app", robot_full, "--from", "osek-mini", "--to", "posix-mini", "-o",
                      dir / "a.json", "--report", dir / "ar.json"});
    auto second = run({"retarget", "--app", robot_full, "--from", "osek-mini", "--to", "posix-mini", "-o",
                       dir / "b.json", "--report", dir / "br.json"});
    CHECK(first.out == second.out);
    CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
    CHECK(read_file(dir / "ar.json") == read_file(dir / "br.json"));
}
