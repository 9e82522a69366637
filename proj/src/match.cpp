#include "prt/engine.hpp"

#include <algorithm>

namespace prt {

std::string_view to_string(UnmatchedReason r) {
    return r == UnmatchedReason::NoKindMatch ? "NoKindMatch" : "TagMismatch";
}

const std::vector<FeaturePair>* TypePair::weave_for(const Role& r) const {
    for (const auto& [role, pairs] : roleWeave)
        if (role == r) return &pairs;
    return nullptr;
}

const TypePair* TypeMapping::find(std::string_view sourceType) const {
    auto it = std::find_if(pairs.begin(), pairs.end(), [&](const TypePair& p) { return p.source == sourceType; });
    return it == pairs.end() ? nullptr : &*it;
}

namespace {

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

RoleWeave weave(const ResourceType& s, const ResourceType& t, std::vector<RetargetWarning>& warnings) {
    RoleWeave result;
    for (const auto& [role, src_features] : s.roles) {
        if (!t.has_role(role)) continue;
        const auto tgt_features = role_features(t, role);
        const auto n = std::min(src_features.size(), tgt_features.size());
        std::vector<FeaturePair> pairs;
        for (std::size_t i = 0; i < n; ++i) pairs.push_back({src_features[i], tgt_features[i]});
        const auto subject = s.name + ".roles." + role.name();
        if (src_features.size() > n) {
            std::vector<std::string> rest(src_features.begin() + static_cast<long>(n), src_features.end());
            warnings.push_back({std::string(wcode::ExtraSourceFeatures), subject,
                                "source features without a target counterpart: " + join(rest)});
        }
        if (tgt_features.size() > n) {
            std::vector<std::string> rest(tgt_features.begin() + static_cast<long>(n), tgt_features.end());
            warnings.push_back({std::string(wcode::ExtraTargetFeatures), subject,
                                "target features left unwoven in " + t.name + ": " + join(rest)});
        }
        result.emplace_back(role, std::move(pairs));
    }
    return result;
}

}  // namespace

TypeMapping match_types(const PlatformModel& src, const PlatformModel& tgt, const RetargetPolicy&) {
    TypeMapping mapping;
    for (const auto& s : src.resourceTypes) {
        const auto signature = classification_signature(s);
        bool kind_seen = false;
        std::vector<const ResourceType*> candidates;
        for (const auto& t : tgt.resourceTypes) {
            if (t.kind != s.kind) continue;
            kind_seen = true;
            if (classification_signature(t) == signature) candidates.push_back(&t);
        }
        if (candidates.empty()) {
            mapping.unmatchedSourceTypes.push_back(
                {s.name, kind_seen ? UnmatchedReason::TagMismatch : UnmatchedReason::NoKindMatch});
            continue;
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const ResourceType* a, const ResourceType* b) { return a->name < b->name; });
        const auto& chosen = *candidates.front();
        if (candidates.size() > 1) {
            std::vector<std::string> names;
            for (const auto* c : candidates) names.push_back(c->name);
            mapping.warnings.push_back({std::string(wcode::AmbiguousTarget), s.name,
                                        "several targets match (" + join(names) + "); chose " + chosen.name});
        }
        mapping.pairs.push_back({s.name, chosen.name, weave(s, chosen, mapping.warnings)});
    }
    return mapping;
}

}  // namespace prt
