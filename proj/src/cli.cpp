#include "prt/cli.hpp"

#include "prt/builtin.hpp"
#include "prt/engine.hpp"
#include "prt/io.hpp"
#include "prt/validate.hpp"

#include "json_util.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace prt::cli {

namespace fs = std::filesystem;
using detail::Json;

namespace {

/// Raised to leave a command with a given status after the message has been printed.
struct Exit {
    int status;
};

std::string upper(Severity s) { return s == Severity::Error ? "ERROR" : "WARNING"; }

std::string render(const ParseDiagnostic& d) {
    return upper(d.severity) + " " + d.code + " " + d.path + ": " + d.message;
}

std::string render(const ValidationDiagnostic& d) {
    return upper(d.severity) + " " + d.code + " " + d.subject + ": " + d.message;
}

std::string render(const RetargetWarning& w) { return "WARNING " + w.code + " " + w.subject + ": " + w.message; }

Json to_json(const std::vector<ParseDiagnostic>& diags) {
    Json arr = Json::array();
    for (const auto& d : diags)
        arr.push_back(Json{{"severity", to_string(d.severity)}, {"code", d.code}, {"path", d.path}, {"message", d.message}});
    return arr;
}

Json to_json(const std::vector<ValidationDiagnostic>& diags) {
    Json arr = Json::array();
    for (const auto& d : diags)
        arr.push_back(
            Json{{"severity", to_string(d.severity)}, {"code", d.code}, {"subject", d.subject}, {"message", d.message}});
    return arr;
}

std::optional<std::string> read_file(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) return std::nullopt;
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Existing files win; then the override directory; then the embedded builtins.
std::optional<std::string> platform_source(const std::string& arg) {
    if (auto text = read_file(arg)) return text;
    if (const char* dir = std::getenv("PLATFORM_RETARGET_BUILTIN_DIR"); dir && *dir) {
        if (auto text = read_file(fs::path(dir) / (arg + ".pm.json"))) return text;
    }
    if (auto doc = builtin_document(arg)) return std::string(*doc);
    return std::nullopt;
}

class Session {
public:
    Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    [[noreturn]] void fail(int status, const std::string& message) {
        err_ << message << "\n";
        throw Exit{status};
    }

    void print_parse_failure(const std::vector<ParseDiagnostic>& diags) {
        for (const auto& d : diags) err_ << render(d) << "\n";
    }

    PlatformModel load_platform(const std::string& arg) {
        auto text = platform_source(arg);
        if (!text) fail(UsageError, "error: '" + arg + "' is neither a readable file nor a builtin platform");
        auto parsed = parse_platform(*text);
        if (!parsed.ok()) {
            print_parse_failure(parsed.diagnostics);
            fail(UsageError, "error: cannot parse platform '" + arg + "'");
        }
        return std::move(*parsed.model);
    }

    /// Loads a platform that must also validate cleanly.
    PlatformModel load_valid_platform(const std::string& arg) {
        auto p = load_platform(arg);
        auto diags = validate_platform(p);
        if (has_errors(diags)) {
            for (const auto& d : diags) err_ << render(d) << "\n";
            fail(UsageError, "error: platform '" + arg + "' does not validate");
        }
        return p;
    }

    ApplicationModel load_application(const std::string& path) {
        auto text = read_file(path);
        if (!text) fail(UsageError, "error: cannot read '" + path + "'");
        auto parsed = parse_application(*text);
        if (!parsed.ok()) {
            print_parse_failure(parsed.diagnostics);
            fail(UsageError, "error: cannot parse application '" + path + "'");
        }
        return std::move(*parsed.model);
    }

    /// Stages every file next to its destination, then renames them all into place.
    void write_atomically(const std::vector<std::pair<std::string, std::string>>& files) {
        std::vector<fs::path> staged;
        auto abandon = [&](const std::string& path) {
            std::error_code ec;
            for (const auto& tmp : staged) fs::remove(tmp, ec);
            fail(UsageError, "error: cannot write '" + path + "'");
        };
        for (const auto& [path, content] : files) {
            fs::path tmp(path);
            tmp += ".tmp";
            staged.push_back(tmp);
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            if (!os || !(os << content) || !os.flush()) abandon(path);
        }
        for (std::size_t i = 0; i < files.size(); ++i) {
            std::error_code ec;
            fs::rename(staged[i], files[i].first, ec);
            if (ec) abandon(files[i].first);
        }
    }

    // -- commands -------------------------------------------------------------

    int validate(const std::string& file, const std::string& platform, bool json) {
        const auto text = platform_source(file);
        if (!text) fail(UsageError, "error: cannot read '" + file + "'");

        auto report_parse = [&](const std::vector<ParseDiagnostic>& diags) {
            if (json)
                out_ << detail::dump(to_json(diags));
            else
                for (const auto& d : diags) out_ << render(d) << "\n";
            err_ << diags.size() << " parse error(s)\n";
            return int{UsageError};
        };

        std::vector<ValidationDiagnostic> diags;
        if (sniff_kind(*text) == DocumentKind::Application) {
            if (platform.empty()) fail(UsageError, "usage: validating an application requires --platform <file>");
            const auto p = load_platform(platform);
            auto parsed = parse_application(*text);
            if (!parsed.ok()) return report_parse(parsed.diagnostics);
            diags = validate_application(*parsed.model, p);
        } else {
            auto parsed = parse_platform(*text);
            if (!parsed.ok()) return report_parse(parsed.diagnostics);
            diags = validate_platform(*parsed.model);
        }

        if (json)
            out_ << detail::dump(to_json(diags));
        else
            for (const auto& d : diags) out_ << render(d) << "\n";
        if (!diags.empty()) {
            const auto errors = std::count_if(diags.begin(), diags.end(),
                                              [](const auto& d) { return d.severity == Severity::Error; });
            err_ << errors << " error(s), " << diags.size() - static_cast<std::size_t>(errors) << " warning(s)\n";
        }
        return has_errors(diags) ? Failed : Success;
    }

    int match(const std::string& from, const std::string& to, bool json) {
        const auto src = load_valid_platform(from);
        const auto tgt = load_valid_platform(to);
        const auto mapping = match_types(src, tgt);
        if (json) {
            out_ << serialize_mapping(mapping);
            return Success;
        }
        for (const auto& rt : src.resourceTypes) {
            if (const auto* pair = mapping.find(rt.name)) {
                out_ << pair->source << " -> " << pair->target;
                std::string roles;
                for (const auto& [role, features] : pair->roleWeave)
                    for (const auto& f : features)
                        roles += (roles.empty() ? "" : ", ") + role.name() + " " + f.source + "->" + f.target;
                if (!roles.empty()) out_ << " [roles: " << roles << "]";
                out_ << "\n";
                continue;
            }
            for (const auto& u : mapping.unmatchedSourceTypes)
                if (u.name == rt.name) out_ << u.name << " -> (unmatched: " << to_string(u.reason) << ")\n";
        }
        for (const auto& w : mapping.warnings) err_ << render(w) << "\n";
        return Success;
    }

    int retarget_cmd(const std::string& app_path, const std::string& from, const std::string& to,
                     const std::string& output, const std::string& report_path, const RetargetPolicy& policy) {
        const auto app = load_application(app_path);
        const auto src = load_platform(from);
        const auto tgt = load_platform(to);
        const auto result = retarget(app, src, tgt, policy);
        if (!result) {
            const auto& e = result.error();
            for (const auto& line : e.details) err_ << line << "\n";
            err_ << "error: " << e.code << " " << e.message << "\n";
            return e.code == ecode::PreconditionFailed ? UsageError : Failed;
        }
        const auto& report = result->report;
        std::vector<std::pair<std::string, std::string>> files{{output, serialize_application(result->application)}};
        if (!report_path.empty()) files.emplace_back(report_path, serialize_report(report));
        write_atomically(files);

        for (const auto& m : report.mappedInstances)
            out_ << m.name << ": " << m.sourceType << " -> " << m.targetType << "\n";
        for (const auto& o : report.omittedInstances) out_ << o.name << ": omitted (" << o.reason << ")\n";
        for (const auto& w : report.warnings) out_ << render(w) << "\n";
        err_ << report.mappedInstances.size() << " mapped, " << report.omittedInstances.size() << " omitted, "
             << report.warnings.size() << " warning(s)\n";
        return Success;
    }

    int inspect(const std::string& platform, const std::string& type) {
        const auto p = load_platform(platform);
        if (type.empty()) {
            out_ << "platform " << p.name << " (" << (p.apiLanguage.empty() ? "unspecified" : p.apiLanguage) << ")\n";
            if (p.priorityRange)
                out_ << "priorityRange " << p.priorityRange->low << ".." << p.priorityRange->high << " "
                     << to_string(p.priorityRange->direction) << "\n";
            for (const auto& rt : p.resourceTypes) out_ << headline(rt) << "\n";
            for (const auto& pi : p.predefinedInstances) out_ << "predefined " << pi.name << ": " << pi.type << "\n";
            return Success;
        }
        const auto* rt = p.find_resource_type(type);
        if (!rt) fail(UsageError, "error: platform '" + p.name + "' has no resource type '" + type + "'");
        out_ << headline(*rt) << "\n";
        for (const auto& a : rt->attributes) {
            out_ << "  attribute " << a.name << ": " << a.type;
            if (a.defaultValue) out_ << " = " << to_display(*a.defaultValue);
            out_ << "\n";
        }
        for (const auto& s : rt->services) {
            out_ << "  service " << s.name << "(";
            for (std::size_t i = 0; i < s.params.size(); ++i)
                out_ << (i ? ", " : "") << s.params[i].name << ": " << s.params[i].type;
            out_ << ")";
            if (s.returns) out_ << " -> " << *s.returns;
            out_ << "\n";
        }
        for (const auto& [role, names] : rt->roles) {
            out_ << "  role " << role.name() << ":";
            for (const auto& n : names) out_ << " " << n;
            out_ << "\n";
        }
        return Success;
    }

private:
    static std::string headline(const ResourceType& rt) {
        std::string line = rt.name + ": " + std::string(to_string(rt.kind)) + " [" +
                           std::string(to_string(family(rt.kind))) + "]";
        for (const auto& [tag, value] : classification_signature(rt)) line += " " + tag + "=" + value;
        return line;
    }

    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model execution platforms and retarget applications between them.", "platform-retarget"};
    app.require_subcommand(1);

    std::string file, platform, format = "text", from, to, app_path, output, report, priority_mode = "verbatim", type;
    bool strict = false;

    auto* validate = app.add_subcommand("validate", "Check a platform, or an application against its platform");
    validate->add_option("file", file, "Platform or application document")->required();
    validate->add_option("--platform", platform, "Platform for application documents");
    validate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* match = app.add_subcommand("match", "Show the resource type mapping between two platforms");
    match->add_option("--from", from, "Source platform")->required();
    match->add_option("--to", to, "Target platform")->required();
    match->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* retarget = app.add_subcommand("retarget", "Port an application to another platform");
    retarget->add_option("--app", app_path, "Application document")->required();
    retarget->add_option("--from", from, "Source platform")->required();
    retarget->add_option("--to", to, "Target platform")->required();
    retarget->add_option("-o,--output", output, "Output application document")->required();
    retarget->add_option("--report", report, "Write the JSON retarget report here");
    retarget->add_flag("--strict", strict, "Fail on any omission or conversion error");
    retarget->add_option("--priority-mode", priority_mode)->check(CLI::IsMember({"verbatim", "normalize"}));

    auto* inspect = app.add_subcommand("inspect", "Describe a platform or one of its resource types");
    inspect->add_option("platform", platform, "Platform document or builtin name")->required();
    inspect->add_option("--type", type, "Resource type to describe");

    std::vector<const char*> argv{"platform-retarget"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return UsageError;
    }

    Session session(out, err);
    try {
        if (*validate) return session.validate(file, platform, format == "json");
        if (*match) return session.match(from, to, format == "json");
        if (*retarget) {
            RetargetPolicy policy;
            policy.strict = strict;
            policy.priorityMode = priority_mode == "normalize" ? PriorityMode::Normalize : PriorityMode::Verbatim;
            return session.retarget_cmd(app_path, from, to, output, report, policy);
        }
        if (*inspect) return session.inspect(platform, type);
    } catch (const Exit& e) {
        return e.status;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return UsageError;
}

}  // namespace prt::cli
