#include "prt/io.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <tuple>

namespace prt {

using detail::Json;
using detail::dump;
using detail::value_json;

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

namespace {

std::string escape_token(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

std::string child(const std::string& path, std::string_view key) {
    return (path == "/" ? std::string() : path) + "/" + escape_token(key);
}

std::string child(const std::string& path, std::size_t index) {
    return child(path, std::to_string(index));
}

/// Parses JSON text, reporting duplicate object keys as IO005 at their location.
std::optional<Json> parse_json(std::string_view text, std::vector<ParseDiagnostic>& diags) {
    struct Frame {
        bool array = false;
        long index = -1;
        std::string key;
        std::set<std::string> keys;
    };
    std::vector<Frame> frames;
    auto current_path = [&] {
        std::string p;
        for (const auto& f : frames)
            p += "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
        return p.empty() ? std::string("/") : p;
    };
    auto enter_element = [&] {
        if (!frames.empty() && frames.back().array) ++frames.back().index;
    };

    Json::parser_callback_t cb = [&](int, Json::parse_event_t event, Json& parsed) {
        using E = Json::parse_event_t;
        switch (event) {
            case E::object_start:
                enter_element();
                frames.emplace_back();
                break;
            case E::array_start:
                enter_element();
                frames.emplace_back().array = true;
                break;
            case E::object_end:
            case E::array_end:
                if (!frames.empty()) frames.pop_back();
                break;
            case E::key: {
                auto& top = frames.back();
                top.key = parsed.get<std::string>();
                if (!top.keys.insert(top.key).second)
                    diags.push_back({Severity::Error, current_path(),
                                     "duplicate key '" + top.key + "'", std::string(io_code::Duplicate)});
                break;
            }
            case E::value:
                enter_element();
                break;
        }
        return true;
    };

    try {
        return Json::parse(text.begin(), text.end(), cb);
    } catch (const Json::parse_error& e) {
        diags.push_back({Severity::Error, "/", e.what(), std::string(io_code::Malformed)});
    } catch (const Json::exception& e) {
        diags.push_back({Severity::Error, "/", e.what(), std::string(io_code::Malformed)});
    }
    return std::nullopt;
}

/// Walks a parsed DOM, accumulating diagnostics.
class Reader {
public:
    explicit Reader(std::vector<ParseDiagnostic>& diags) : diags_(diags) {}

    void error(const std::string& path, std::string_view code, std::string message) {
        diags_.push_back({Severity::Error, path, std::move(message), std::string(code)});
    }

    bool expect_object(const Json& j, const std::string& path) {
        if (j.is_object()) return true;
        error(path, io_code::Malformed, "expected an object");
        return false;
    }

    bool expect_array(const Json& j, const std::string& path) {
        if (j.is_array()) return true;
        error(path, io_code::Malformed, "expected an array");
        return false;
    }

    /// Reports unknown keys and missing required keys; returns false if any required key is absent.
    bool check_keys(const Json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed,
                    std::initializer_list<std::string_view> required) {
        for (const auto& [key, value] : obj.items()) {
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                error(child(path, key), io_code::UnknownKey, "unknown key '" + key + "'");
        }
        bool ok = true;
        for (auto key : required) {
            if (!obj.contains(key)) {
                error(path, io_code::Malformed, "missing required key '" + std::string(key) + "'");
                ok = false;
            }
        }
        return ok;
    }

    std::optional<std::string> string_at(const Json& j, const std::string& path) {
        if (j.is_string()) return j.get<std::string>();
        error(path, io_code::Malformed, "expected a string");
        return std::nullopt;
    }

    std::optional<std::string> identifier_at(const Json& j, const std::string& path) {
        auto s = string_at(j, path);
        if (s && !is_identifier(*s)) {
            error(path, io_code::Malformed, "'" + *s + "' is not a valid identifier");
            return std::nullopt;
        }
        return s;
    }

    std::optional<std::int64_t> integer_at(const Json& j, const std::string& path) {
        if (j.is_number_integer()) {
            if (j.is_number_unsigned() &&
                j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
                error(path, io_code::Malformed, "integer out of range");
                return std::nullopt;
            }
            return j.get<std::int64_t>();
        }
        error(path, io_code::Malformed, "expected an integer");
        return std::nullopt;
    }

    std::optional<double> number_at(const Json& j, const std::string& path) {
        if (j.is_number()) {
            const double d = j.get<double>();
            if (std::isfinite(d)) return d;
        }
        error(path, io_code::Malformed, "expected a finite number");
        return std::nullopt;
    }

    std::optional<Value> value_at(const Json& j, const std::string& path) {
        if (j.is_boolean()) return Value{std::in_place_type<bool>, j.get<bool>()};
        if (j.is_string()) return Value{std::in_place_type<std::string>, j.get<std::string>()};
        if (j.is_number_unsigned()) {
            const auto u = j.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return Value{u};
            return Value{std::in_place_type<std::int64_t>, static_cast<std::int64_t>(u)};
        }
        if (j.is_number_integer()) return Value{std::in_place_type<std::int64_t>, j.get<std::int64_t>()};
        if (j.is_number_float()) {
            auto d = number_at(j, path);
            if (!d) return std::nullopt;
            return Value{*d};
        }
        if (j.is_object() && j.size() == 1) {
            if (j.contains("uint")) {
                const auto& u = j["uint"];
                if (u.is_number_unsigned()) return Value{u.get<std::uint64_t>()};
                error(child(path, "uint"), io_code::Malformed, "expected a non-negative integer");
                return std::nullopt;
            }
            if (j.contains("enum")) {
                auto lit = identifier_at(j["enum"], child(path, "enum"));
                if (!lit) return std::nullopt;
                return Value{EnumLiteral{*lit}};
            }
        }
        error(path, io_code::Malformed,
              "expected a value (number, boolean, string, {\"uint\": n} or {\"enum\": literal})");
        return std::nullopt;
    }

    /// Records a name in a uniqueness scope; reports IO005 on collision.
    bool claim(std::set<std::string>& scope, const std::string& name, const std::string& path) {
        if (scope.insert(name).second) return true;
        error(path, io_code::Duplicate, "duplicate name '" + name + "'");
        return false;
    }

    template <typename Fn>
    void each(const Json& obj, std::string_view key, const std::string& path, Fn&& fn) {
        if (!obj.contains(key)) return;
        const auto p = child(path, key);
        const auto& arr = obj[std::string(key)];
        if (!expect_array(arr, p)) return;
        for (std::size_t i = 0; i < arr.size(); ++i) fn(arr[i], child(p, i));
    }

    void format_version(const Json& root) {
        if (!root.contains("formatVersion")) return;
        const auto& v = root["formatVersion"];
        if (!(v.is_number_integer() && v.get<std::int64_t>() == 1))
            error(child("/", "formatVersion"), io_code::Malformed, "formatVersion must be 1");
    }

    bool document_kind(const Json& root, std::string_view expected) {
        const auto& k = root["kind"];
        const auto path = child("/", "kind");
        auto s = string_at(k, path);
        if (!s) return false;
        if (*s == expected) return true;
        if (*s == "platform" || *s == "application")
            error(path, io_code::Malformed, "expected a " + std::string(expected) + " document, got " + *s);
        else
            error(path, io_code::BadLiteral, "unknown document kind '" + *s + "'");
        return false;
    }

    // -- platform ------------------------------------------------------------

    std::optional<DataTypeDef> data_type(const Json& j, const std::string& path) {
        if (!expect_object(j, path)) return std::nullopt;
        if (!check_keys(j, path, {"name", "base", "bits", "enumLiterals", "range"}, {"name", "base"}))
            return std::nullopt;
        DataTypeDef dt;
        auto name = identifier_at(j["name"], child(path, "name"));
        auto base_s = string_at(j["base"], child(path, "base"));
        if (!name || !base_s) return std::nullopt;
        dt.name = *name;
        auto base = parse_base_type(*base_s);
        if (!base) {
            error(child(path, "base"), io_code::BadLiteral, "unknown base type '" + *base_s + "'");
            return std::nullopt;
        }
        dt.base = *base;
        bool ok = true;
        if (j.contains("bits")) {
            const auto p = child(path, "bits");
            auto bits = integer_at(j["bits"], p);
            if (!bits) {
                ok = false;
            } else if (!is_numeric(dt.base)) {
                error(p, io_code::Malformed, "bits only apply to numeric types");
                ok = false;
            } else if (dt.base == BaseType::Float ? (*bits != 32 && *bits != 64) : (*bits < 1 || *bits > 64)) {
                error(p, io_code::Malformed, "unsupported bit width " + std::to_string(*bits));
                ok = false;
            } else {
                dt.bits = static_cast<int>(*bits);
            }
        }
        if (j.contains("enumLiterals")) {
            const auto p = child(path, "enumLiterals");
            if (dt.base != BaseType::Enum) {
                error(p, io_code::Malformed, "enumLiterals only apply to enum types");
                ok = false;
            } else {
                std::set<std::string> seen;
                each(j, "enumLiterals", path, [&](const Json& lit, const std::string& lp) {
                    auto s = identifier_at(lit, lp);
                    if (!s) {
                        ok = false;
                    } else if (claim(seen, *s, lp)) {
                        dt.enumLiterals.push_back(*s);
                    } else {
                        ok = false;
                    }
                });
            }
        }
        if (dt.base == BaseType::Enum && dt.enumLiterals.empty() && ok) {
            error(path, io_code::Malformed, "enum type needs at least one literal");
            ok = false;
        }
        if (j.contains("range")) {
            const auto p = child(path, "range");
            const auto& r = j["range"];
            if (!is_numeric(dt.base)) {
                error(p, io_code::Malformed, "range only applies to numeric types");
                ok = false;
            } else if (expect_object(r, p) && check_keys(r, p, {"min", "max"}, {"min", "max"})) {
                auto lo = number_at(r["min"], child(p, "min"));
                auto hi = number_at(r["max"], child(p, "max"));
                if (lo && hi && *lo <= *hi) {
                    dt.range = NumericRange{*lo, *hi};
                } else {
                    if (lo && hi) error(p, io_code::Malformed, "range min exceeds max");
                    ok = false;
                }
            } else {
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return dt;
    }

    std::optional<ClassificationTags> tags(const Json& j, const std::string& path) {
        if (!expect_object(j, path)) return std::nullopt;
        ClassificationTags t;
        bool ok = true;
        for (const auto& [key, value] : j.items()) {
            const auto p = child(path, key);
            if (key == "occurrenceKind") {
                auto s = string_at(value, p);
                auto k = s ? parse_occurrence_kind(*s) : std::nullopt;
                if (s && !k) error(p, io_code::BadLiteral, "unknown occurrence kind '" + *s + "'");
                if (k) t.occurrenceKind = k; else ok = false;
            } else if (key == "isPreemptable") {
                if (value.is_boolean()) {
                    t.isPreemptable = value.get<bool>();
                } else {
                    error(p, io_code::Malformed, "expected a boolean");
                    ok = false;
                }
            } else if (is_extension_name(key)) {
                if (value.is_boolean()) {
                    t.extra.emplace_back(key, value.get<bool>());
                } else if (value.is_string() && is_identifier(value.get<std::string>())) {
                    t.extra.emplace_back(key, EnumLiteral{value.get<std::string>()});
                } else {
                    error(p, io_code::BadLiteral, "extension tag needs a boolean or an enum literal");
                    ok = false;
                }
            } else {
                error(p, io_code::UnknownKey, "unknown tag '" + key + "'");
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return t;
    }

    /// Checks a type reference against the platform's data types.
    const DataTypeDef* type_ref(const PlatformModel& pm, const Json& j, const std::string& path, std::string& out) {
        auto s = identifier_at(j, path);
        if (!s) return nullptr;
        out = *s;
        const auto* dt = pm.find_data_type(*s);
        if (!dt) error(path, io_code::Unresolved, "unknown data type '" + *s + "'");
        return dt;
    }

    std::optional<ResourceType> resource_type(const PlatformModel& pm, const Json& j, const std::string& path) {
        if (!expect_object(j, path)) return std::nullopt;
        if (!check_keys(j, path, {"name", "kind", "tags", "attributes", "services", "roles"}, {"name", "kind"}))
            return std::nullopt;
        ResourceType rt;
        bool ok = true;
        auto name = identifier_at(j["name"], child(path, "name"));
        if (name) rt.name = *name; else ok = false;
        if (auto ks = string_at(j["kind"], child(path, "kind"))) {
            if (auto k = parse_resource_kind(*ks)) {
                rt.kind = *k;
            } else {
                error(child(path, "kind"), io_code::BadLiteral, "unknown resource kind '" + *ks + "'");
                ok = false;
            }
        } else {
            ok = false;
        }
        if (j.contains("tags")) {
            if (auto t = tags(j["tags"], child(path, "tags"))) rt.tags = std::move(*t); else ok = false;
        }

        std::set<std::string> features;
        each(j, "attributes", path, [&](const Json& a, const std::string& ap) {
            if (!expect_object(a, ap) || !check_keys(a, ap, {"name", "type", "default"}, {"name", "type"})) {
                ok = false;
                return;
            }
            AttributeDef attr;
            auto an = identifier_at(a["name"], child(ap, "name"));
            const auto* dt = type_ref(pm, a["type"], child(ap, "type"), attr.type);
            if (!an || !dt) {
                ok = false;
                return;
            }
            attr.name = *an;
            if (!claim(features, attr.name, child(ap, "name"))) ok = false;
            if (a.contains("default")) {
                const auto dp = child(ap, "default");
                auto v = value_at(a["default"], dp);
                if (!v) {
                    ok = false;
                    return;
                }
                if (!conforms(*v, *dt)) {
                    const bool enum_miss = dt->base == BaseType::Enum &&
                        (std::holds_alternative<EnumLiteral>(*v) || std::holds_alternative<std::string>(*v));
                    error(dp, enum_miss ? io_code::BadLiteral : io_code::Malformed,
                          "default " + to_display(*v) + " does not conform to type '" + dt->name + "'");
                    ok = false;
                    return;
                }
                attr.defaultValue = std::move(*v);
            }
            rt.attributes.push_back(std::move(attr));
        });

        each(j, "services", path, [&](const Json& s, const std::string& sp) {
            if (!expect_object(s, sp) || !check_keys(s, sp, {"name", "params", "returns"}, {"name"})) {
                ok = false;
                return;
            }
            ServiceSignature svc;
            auto sn = identifier_at(s["name"], child(sp, "name"));
            if (!sn) {
                ok = false;
                return;
            }
            svc.name = *sn;
            if (!claim(features, svc.name, child(sp, "name"))) ok = false;
            std::set<std::string> param_names;
            each(s, "params", sp, [&](const Json& prm, const std::string& pp) {
                if (!expect_object(prm, pp) || !check_keys(prm, pp, {"name", "type"}, {"name", "type"})) {
                    ok = false;
                    return;
                }
                ServiceParam param;
                auto pn = identifier_at(prm["name"], child(pp, "name"));
                const auto* dt = type_ref(pm, prm["type"], child(pp, "type"), param.type);
                if (!pn || !dt) {
                    ok = false;
                    return;
                }
                param.name = *pn;
                if (!claim(param_names, param.name, child(pp, "name"))) ok = false;
                svc.params.push_back(std::move(param));
            });
            if (s.contains("returns")) {
                std::string ret;
                if (type_ref(pm, s["returns"], child(sp, "returns"), ret)) svc.returns = ret; else ok = false;
            }
            rt.services.push_back(std::move(svc));
        });

        if (j.contains("roles")) {
            const auto rp = child(path, "roles");
            const auto& roles = j["roles"];
            if (expect_object(roles, rp)) {
                for (const auto& [key, names] : roles.items()) {
                    const auto kp = child(rp, key);
                    auto role = Role::parse(key);
                    if (!role) {
                        error(kp, io_code::BadLiteral, "unknown role '" + key + "'");
                        ok = false;
                        continue;
                    }
                    if (!expect_array(names, kp)) {
                        ok = false;
                        continue;
                    }
                    std::vector<std::string> bound;
                    std::set<std::string> seen;
                    for (std::size_t i = 0; i < names.size(); ++i) {
                        const auto np = child(kp, i);
                        auto n = identifier_at(names[i], np);
                        if (!n) {
                            ok = false;
                        } else if (!features.count(*n)) {
                            error(np, io_code::Unresolved,
                                  "role " + key + " names unknown feature '" + *n + "'");
                            ok = false;
                        } else if (claim(seen, *n, np)) {
                            bound.push_back(*n);
                        } else {
                            ok = false;
                        }
                    }
                    rt.roles.emplace_back(std::move(*role), std::move(bound));
                }
            } else {
                ok = false;
            }
        }
        if (!ok) return std::nullopt;
        return rt;
    }

    std::optional<PlatformModel> platform(const Json& root) {
        if (!expect_object(root, "/")) return std::nullopt;
        if (root.contains("kind") && !document_kind(root, "platform")) return std::nullopt;
        if (!check_keys(root, "/",
                        {"kind", "formatVersion", "name", "apiLanguage", "priorityRange", "dataTypes",
                         "resourceTypes", "predefinedInstances"},
                        {"kind", "name"}))
            return std::nullopt;
        format_version(root);
        PlatformModel pm;
        if (auto n = identifier_at(root["name"], "/name")) pm.name = *n;
        if (root.contains("apiLanguage")) {
            if (auto s = string_at(root["apiLanguage"], "/apiLanguage")) pm.apiLanguage = *s;
        }
        if (root.contains("priorityRange")) {
            const std::string p = "/priorityRange";
            const auto& r = root["priorityRange"];
            if (expect_object(r, p) &&
                check_keys(r, p, {"low", "high", "direction"}, {"low", "high", "direction"})) {
                auto lo = integer_at(r["low"], p + "/low");
                auto hi = integer_at(r["high"], p + "/high");
                auto ds = string_at(r["direction"], p + "/direction");
                auto dir = ds ? parse_priority_direction(*ds) : std::nullopt;
                if (ds && !dir) error(p + "/direction", io_code::BadLiteral, "unknown direction '" + *ds + "'");
                if (lo && hi && *lo == *hi) error(p, io_code::Malformed, "priority range endpoints must differ");
                if (lo && hi && dir && *lo != *hi) pm.priorityRange = PriorityRange{*lo, *hi, *dir};
            }
        }

        std::set<std::string> dt_names;
        each(root, "dataTypes", "/", [&](const Json& j, const std::string& p) {
            if (auto dt = data_type(j, p)) {
                if (claim(dt_names, dt->name, child(p, "name"))) pm.dataTypes.push_back(std::move(*dt));
            }
        });

        std::set<std::string> rt_names;
        each(root, "resourceTypes", "/", [&](const Json& j, const std::string& p) {
            if (auto rt = resource_type(pm, j, p)) {
                if (claim(rt_names, rt->name, child(p, "name"))) pm.resourceTypes.push_back(std::move(*rt));
            }
        });

        std::set<std::string> inst_names;
        each(root, "predefinedInstances", "/", [&](const Json& j, const std::string& p) {
            if (!expect_object(j, p) || !check_keys(j, p, {"name", "type"}, {"name", "type"})) return;
            auto n = identifier_at(j["name"], child(p, "name"));
            auto t = identifier_at(j["type"], child(p, "type"));
            if (!n || !t) return;
            if (!pm.find_resource_type(*t)) {
                // A type that failed to parse has already been reported.
                if (!rt_names.count(*t))
                    error(child(p, "type"), io_code::Unresolved, "unknown resource type '" + *t + "'");
                return;
            }
            if (claim(inst_names, *n, child(p, "name"))) pm.predefinedInstances.push_back({*n, *t});
        });
        return pm;
    }

    // -- application ---------------------------------------------------------

    std::optional<InstanceSpec> instance(const Json& j, const std::string& path) {
        if (!expect_object(j, path) ||
            !check_keys(j, path, {"name", "type", "slots", "dependencies"}, {"name", "type"}))
            return std::nullopt;
        auto n = identifier_at(j["name"], child(path, "name"));
        auto t = identifier_at(j["type"], child(path, "type"));
        if (!n || !t) return std::nullopt;
        InstanceSpec inst{*n, *t, {}, {}};
        bool ok = true;
        if (j.contains("slots")) {
            const auto sp = child(path, "slots");
            const auto& slots = j["slots"];
            if (expect_object(slots, sp)) {
                for (const auto& [key, value] : slots.items()) {
                    const auto kp = child(sp, key);
                    if (!is_identifier(key)) {
                        error(kp, io_code::Malformed, "'" + key + "' is not a valid attribute name");
                        ok = false;
                        continue;
                    }
                    if (auto v = value_at(value, kp)) inst.slots.emplace_back(key, std::move(*v)); else ok = false;
                }
            } else {
                ok = false;
            }
        }
        each(j, "dependencies", path, [&](const Json& d, const std::string& dp) {
            if (!expect_object(d, dp) || !check_keys(d, dp, {"role", "target"}, {"role", "target"})) {
                ok = false;
                return;
            }
            auto rs = string_at(d["role"], child(dp, "role"));
            auto target = string_at(d["target"], child(dp, "target"));
            if (!rs || !target) {
                ok = false;
                return;
            }
            auto role = Role::parse(*rs);
            if (!role) {
                error(child(dp, "role"), io_code::BadLiteral, "unknown role '" + *rs + "'");
                ok = false;
                return;
            }
            if (!is_valid_target(*target)) {
                error(child(dp, "target"), io_code::Malformed,
                      "dependency target '" + *target + "' must be 'owner' or 'owner.member'");
                ok = false;
                return;
            }
            inst.dependencies.push_back({std::move(*role), *target});
        });
        if (!ok) return std::nullopt;
        return inst;
    }

    std::optional<ApplicationModel> application(const Json& root) {
        if (!expect_object(root, "/")) return std::nullopt;
        if (root.contains("kind") && !document_kind(root, "application")) return std::nullopt;
        if (!check_keys(root, "/",
                        {"kind", "formatVersion", "name", "platform", "appElements", "appObjects", "instances"},
                        {"kind", "name", "platform"}))
            return std::nullopt;
        format_version(root);
        ApplicationModel app;
        if (auto n = identifier_at(root["name"], "/name")) app.name = *n;
        if (auto p = identifier_at(root["platform"], "/platform")) app.platformName = *p;

        std::set<std::string> names;
        each(root, "appElements", "/", [&](const Json& j, const std::string& p) {
            if (!expect_object(j, p) || !check_keys(j, p, {"name", "routines"}, {"name"})) return;
            auto n = identifier_at(j["name"], child(p, "name"));
            if (!n) return;
            AppElement el{*n, {}};
            std::set<std::string> routines;
            each(j, "routines", p, [&](const Json& r, const std::string& rp) {
                auto rn = identifier_at(r, rp);
                if (rn && claim(routines, *rn, rp)) el.routines.push_back(*rn);
            });
            if (claim(names, el.name, child(p, "name"))) app.appElements.push_back(std::move(el));
        });
        each(root, "appObjects", "/", [&](const Json& j, const std::string& p) {
            if (!expect_object(j, p) || !check_keys(j, p, {"name", "element"}, {"name", "element"})) return;
            auto n = identifier_at(j["name"], child(p, "name"));
            auto e = identifier_at(j["element"], child(p, "element"));
            if (!n || !e) return;
            if (!app.find_element(*e)) {
                error(child(p, "element"), io_code::Unresolved, "unknown application element '" + *e + "'");
                return;
            }
            if (claim(names, *n, child(p, "name"))) app.appObjects.push_back({*n, *e});
        });
        each(root, "instances", "/", [&](const Json& j, const std::string& p) {
            if (auto inst = instance(j, p)) {
                if (claim(names, inst->name, child(p, "name"))) app.resourceInstances.push_back(std::move(*inst));
            }
        });
        return app;
    }

private:
    std::vector<ParseDiagnostic>& diags_;
};

template <typename Model>
ParseResult<Model> finish(std::optional<Model> model, std::vector<ParseDiagnostic> diags) {
    ParseResult<Model> result;
    const bool has_error = std::any_of(diags.begin(), diags.end(),
                                       [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
    if (has_error || !model) {
        if (diags.empty())
            diags.push_back({Severity::Error, "/", "document could not be read", std::string(io_code::Malformed)});
        std::stable_sort(diags.begin(), diags.end(), [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
            return std::tie(a.path, a.code) < std::tie(b.path, b.code);
        });
        result.diagnostics = std::move(diags);
    } else {
        result.model = std::move(model);
    }
    return result;
}

// -- serialization -----------------------------------------------------------

Json number_json(double d) {
    if (d == std::floor(d) && std::fabs(d) < 0x1p53) return static_cast<std::int64_t>(d);
    return d;
}

}  // namespace

std::optional<DocumentKind> sniff_kind(std::string_view text) {
    auto j = Json::parse(text.begin(), text.end(), nullptr, false);
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) return std::nullopt;
    const auto k = j["kind"].get<std::string>();
    if (k == "platform") return DocumentKind::Platform;
    if (k == "application") return DocumentKind::Application;
    return std::nullopt;
}

ParseResult<PlatformModel> parse_platform(std::string_view text) {
    std::vector<ParseDiagnostic> diags;
    auto json = parse_json(text, diags);
    if (!json) return finish<PlatformModel>(std::nullopt, std::move(diags));
    Reader reader(diags);
    auto model = reader.platform(*json);
    return finish(std::move(model), std::move(diags));
}

ParseResult<ApplicationModel> parse_application(std::string_view text) {
    std::vector<ParseDiagnostic> diags;
    auto json = parse_json(text, diags);
    if (!json) return finish<ApplicationModel>(std::nullopt, std::move(diags));
    Reader reader(diags);
    auto model = reader.application(*json);
    return finish(std::move(model), std::move(diags));
}

std::string serialize_platform(const PlatformModel& m) {
    Json root = Json::object();
    root["kind"] = "platform";
    root["name"] = m.name;
    if (!m.apiLanguage.empty()) root["apiLanguage"] = m.apiLanguage;
    if (m.priorityRange) {
        root["priorityRange"] = Json{{"low", m.priorityRange->low},
                                     {"high", m.priorityRange->high},
                                     {"direction", to_string(m.priorityRange->direction)}};
    }
    Json types = Json::array();
    for (const auto& dt : m.dataTypes) {
        Json j = Json::object();
        j["name"] = dt.name;
        j["base"] = to_string(dt.base);
        if (dt.bits) j["bits"] = *dt.bits;
        if (dt.base == BaseType::Enum) j["enumLiterals"] = dt.enumLiterals;
        if (dt.range) j["range"] = Json{{"min", number_json(dt.range->min)}, {"max", number_json(dt.range->max)}};
        types.push_back(std::move(j));
    }
    root["dataTypes"] = std::move(types);

    Json rts = Json::array();
    for (const auto& rt : m.resourceTypes) {
        Json j = Json::object();
        j["name"] = rt.name;
        j["kind"] = to_string(rt.kind);
        Json tags = Json::object();
        if (rt.tags.occurrenceKind) tags["occurrenceKind"] = to_string(*rt.tags.occurrenceKind);
        if (rt.tags.isPreemptable) tags["isPreemptable"] = *rt.tags.isPreemptable;
        for (const auto& [key, value] : rt.tags.extra) {
            if (auto* b = std::get_if<bool>(&value))
                tags[key] = *b;
            else
                tags[key] = std::get<EnumLiteral>(value).name;
        }
        j["tags"] = std::move(tags);
        Json attrs = Json::array();
        for (const auto& a : rt.attributes) {
            Json aj = Json::object();
            aj["name"] = a.name;
            aj["type"] = a.type;
            if (a.defaultValue) aj["default"] = value_json(*a.defaultValue);
            attrs.push_back(std::move(aj));
        }
        j["attributes"] = std::move(attrs);
        Json svcs = Json::array();
        for (const auto& s : rt.services) {
            Json sj = Json::object();
            sj["name"] = s.name;
            Json params = Json::array();
            for (const auto& p : s.params) params.push_back(Json{{"name", p.name}, {"type", p.type}});
            sj["params"] = std::move(params);
            if (s.returns) sj["returns"] = *s.returns;
            svcs.push_back(std::move(sj));
        }
        j["services"] = std::move(svcs);
        Json roles = Json::object();
        for (const auto& [role, names] : rt.roles) roles[role.name()] = names;
        j["roles"] = std::move(roles);
        rts.push_back(std::move(j));
    }
    root["resourceTypes"] = std::move(rts);

    Json pis = Json::array();
    for (const auto& pi : m.predefinedInstances) pis.push_back(Json{{"name", pi.name}, {"type", pi.type}});
    root["predefinedInstances"] = std::move(pis);
    return dump(root);
}

std::string serialize_application(const ApplicationModel& m) {
    Json root = Json::object();
    root["kind"] = "application";
    root["name"] = m.name;
    root["platform"] = m.platformName;
    Json els = Json::array();
    for (const auto& e : m.appElements) els.push_back(Json{{"name", e.name}, {"routines", e.routines}});
    root["appElements"] = std::move(els);
    Json objs = Json::array();
    for (const auto& o : m.appObjects) objs.push_back(Json{{"name", o.name}, {"element", o.element}});
    root["appObjects"] = std::move(objs);
    Json insts = Json::array();
    for (const auto& i : m.resourceInstances) {
        Json j = Json::object();
        j["name"] = i.name;
        j["type"] = i.typeName;
        Json slots = Json::object();
        for (const auto& [attr, value] : i.slots) slots[attr] = value_json(value);
        j["slots"] = std::move(slots);
        Json deps = Json::array();
        for (const auto& d : i.dependencies) deps.push_back(Json{{"role", d.role.name()}, {"target", d.target}});
        j["dependencies"] = std::move(deps);
        insts.push_back(std::move(j));
    }
    root["instances"] = std::move(insts);
    return dump(root);
}

}  // namespace prt
