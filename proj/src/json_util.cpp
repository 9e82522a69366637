#include "json_util.hpp"

namespace prt::detail {

Json value_json(const Value& v) {
    struct Visitor {
        Json operator()(std::int64_t i) const { return i; }
        Json operator()(std::uint64_t u) const { return Json{{"uint", u}}; }
        Json operator()(double d) const { return d; }
        Json operator()(bool b) const { return b; }
        Json operator()(const std::string& s) const { return s; }
        Json operator()(const EnumLiteral& e) const { return Json{{"enum", e.name}}; }
    };
    return std::visit(Visitor{}, v);
}

std::string dump(const Json& j) {
    return j.dump(2, ' ', false, Json::error_handler_t::strict) + "\n";
}

}  // namespace prt::detail
