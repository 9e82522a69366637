#pragma once

// Exact numeric helpers shared by value conformance and conversion.

#include "prt/model.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace prt::detail {

using Wide = __int128;

/// Integer payload of an Int/Uint value.
inline std::optional<Wide> integer_of(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return Wide{*i};
    if (auto* u = std::get_if<std::uint64_t>(&v)) return Wide{*u};
    return std::nullopt;
}

inline std::optional<double> float_of(const Value& v) {
    if (auto* d = std::get_if<double>(&v)) return *d;
    return std::nullopt;
}

inline Wide int_min(int bits) { return -(Wide{1} << (bits - 1)); }
inline Wide int_max(int bits) { return (Wide{1} << (bits - 1)) - 1; }
inline Wide uint_max(int bits) { return (Wide{1} << bits) - 1; }

/// Compares an integer against a double bound exactly.
inline bool le(Wide a, double b) {
    if (b >= 0x1p126) return true;
    if (b < -0x1p126) return false;
    const double fl = std::floor(b);
    return a <= static_cast<Wide>(fl);
}
inline bool ge(Wide a, double b) {
    if (b <= -0x1p126) return true;
    if (b > 0x1p126) return false;
    const double cl = std::ceil(b);
    return a >= static_cast<Wide>(cl);
}

inline bool integer_fits(Wide v, const DataTypeDef& t) {
    const int w = t.width();
    if (t.base == BaseType::Int) {
        if (v < int_min(w) || v > int_max(w)) return false;
    } else if (t.base == BaseType::Uint) {
        if (v < 0 || v > uint_max(w)) return false;
    } else {
        return false;
    }
    if (t.range) return ge(v, t.range->min) && le(v, t.range->max);
    return true;
}

inline bool float_fits(double d, const DataTypeDef& t) {
    if (!std::isfinite(d)) return false;
    if (t.width() == 32 && std::fabs(d) > std::numeric_limits<float>::max()) return false;
    if (t.range) return d >= t.range->min && d <= t.range->max;
    return true;
}

/// Builds the canonical value of an integer in an Int or Uint type.
inline Value integer_value(Wide v, BaseType base) {
    if (base == BaseType::Uint) return static_cast<std::uint64_t>(v);
    return static_cast<std::int64_t>(v);
}

}  // namespace prt::detail
