#pragma once

// Platform models shipped with the library.

#include "prt/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prt {

class UnknownBuiltin : public std::runtime_error {
public:
    explicit UnknownBuiltin(std::string_view name)
        : std::runtime_error("unknown builtin platform '" + std::string(name) + "'") {}
};

/// Names of the bundled platforms: osek-mini, arinc653-mini, posix-mini.
const std::vector<std::string>& builtin_names();

/// Canonical document text of a bundled platform.
std::optional<std::string_view> builtin_document(std::string_view name);

/// Parsed bundled platform. Throws UnknownBuiltin for any other name.
const PlatformModel& builtin(std::string_view name);

}  // namespace prt
