#include "prt/builtin.hpp"

#include "prt/io.hpp"

#include <map>
#include <mutex>

namespace prt {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kBuiltinDocuments[];
extern const std::size_t kBuiltinDocumentCount;
}  // namespace detail

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < detail::kBuiltinDocumentCount; ++i)
            out.emplace_back(detail::kBuiltinDocuments[i].first);
        return out;
    }();
    return names;
}

std::optional<std::string_view> builtin_document(std::string_view name) {
    for (std::size_t i = 0; i < detail::kBuiltinDocumentCount; ++i)
        if (detail::kBuiltinDocuments[i].first == name) return detail::kBuiltinDocuments[i].second;
    return std::nullopt;
}

const PlatformModel& builtin(std::string_view name) {
    // Parsed once; entries are never mutated after insertion.
    static std::mutex mutex;
    static std::map<std::string, PlatformModel, std::less<>> cache;

    auto doc = builtin_document(name);
    if (!doc) throw UnknownBuiltin(name);
    std::lock_guard lock(mutex);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
    auto parsed = parse_platform(*doc);
    if (!parsed.ok()) {
        const auto& d = parsed.diagnostics.front();
        throw std::logic_error("bundled platform '" + std::string(name) + "' is invalid: " + d.code + " " + d.path +
                               ": " + d.message);
    }
    return cache.emplace(std::string(name), std::move(*parsed.model)).first->second;
}

}  // namespace prt
