#include "prt/engine.hpp"

#include "json_util.hpp"

namespace prt {

using detail::Json;

namespace {

Json warnings_json(const std::vector<RetargetWarning>& warnings) {
    Json arr = Json::array();
    for (const auto& w : warnings) arr.push_back(Json{{"code", w.code}, {"subject", w.subject}, {"message", w.message}});
    return arr;
}

}  // namespace

std::string serialize_report(const RetargetReport& report) {
    Json root = Json::object();
    Json mapped = Json::array();
    for (const auto& m : report.mappedInstances)
        mapped.push_back(Json{{"name", m.name}, {"sourceType", m.sourceType}, {"targetType", m.targetType}});
    root["mappedInstances"] = std::move(mapped);
    Json omitted = Json::array();
    for (const auto& o : report.omittedInstances) omitted.push_back(Json{{"name", o.name}, {"reason", o.reason}});
    root["omittedInstances"] = std::move(omitted);
    root["warnings"] = warnings_json(report.warnings);
    Json conversions = Json::array();
    for (const auto& c : report.valueConversions) {
        Json j = Json::object();
        j["instance"] = c.instance;
        j["sourceFeature"] = c.sourceFeature;
        j["targetFeature"] = c.targetFeature;
        j["sourceValue"] = detail::value_json(c.sourceValue);
        j["targetValue"] = detail::value_json(c.targetValue);
        conversions.push_back(std::move(j));
    }
    root["valueConversions"] = std::move(conversions);
    return detail::dump(root);
}

std::string serialize_mapping(const TypeMapping& mapping) {
    Json root = Json::object();
    Json pairs = Json::array();
    for (const auto& p : mapping.pairs) {
        Json weave = Json::object();
        for (const auto& [role, features] : p.roleWeave) {
            Json arr = Json::array();
            for (const auto& f : features) arr.push_back(Json{{"source", f.source}, {"target", f.target}});
            weave[role.name()] = std::move(arr);
        }
        Json j = Json::object();
        j["source"] = p.source;
        j["target"] = p.target;
        j["roleWeave"] = std::move(weave);
        pairs.push_back(std::move(j));
    }
    root["pairs"] = std::move(pairs);
    Json unmatched = Json::array();
    for (const auto& u : mapping.unmatchedSourceTypes)
        unmatched.push_back(Json{{"name", u.name}, {"reason", to_string(u.reason)}});
    root["unmatchedSourceTypes"] = std::move(unmatched);
    root["warnings"] = warnings_json(mapping.warnings);
    return detail::dump(root);
}

}  // namespace prt
