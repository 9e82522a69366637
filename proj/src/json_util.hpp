#pragma once

#include "prt/model.hpp"

#include <json.hpp>

#include <string>

namespace prt::detail {

using Json = nlohmann::ordered_json;

/// Slot/default value encoding: Uint and enum literals are wrapped so the tag survives a round trip.
Json value_json(const Value& v);

/// Canonical text: 2-space indent, UTF-8, LF, trailing newline.
std::string dump(const Json& j);

}  // namespace prt::detail
