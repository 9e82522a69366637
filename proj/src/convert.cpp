#include "prt/engine.hpp"

#include "numeric.hpp"

#include <charconv>
#include <cmath>

namespace prt {

namespace {

using detail::Wide;

Error fail(std::string_view code, std::string message) { return Error{std::string(code), std::move(message), {}}; }

Error out_of_range(const Value& v, const DataTypeDef& t) {
    return fail(ecode::OutOfRange, to_display(v) + " is not representable in '" + t.name + "'");
}

std::string decimal(Wide i) {
    if (i < 0) return "-" + std::to_string(static_cast<std::uint64_t>(-i));
    return std::to_string(static_cast<std::uint64_t>(i));
}

std::string decimal(double d) { return to_display(Value{d}); }

/// Strict integer parse: optional leading '-', digits, nothing else.
Result<Wide> parse_integer(const std::string& s) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (s.empty()) return fail(ecode::UnparseableString, "empty string is not a number");
    if (s.front() == '-') {
        std::int64_t i = 0;
        auto [ptr, ec] = std::from_chars(first, last, i);
        if (ec == std::errc::result_out_of_range) return fail(ecode::OutOfRange, "'" + s + "' overflows 64 bits");
        if (ec != std::errc{} || ptr != last) return fail(ecode::UnparseableString, "'" + s + "' is not an integer");
        return Wide{i};
    }
    std::uint64_t u = 0;
    auto [ptr, ec] = std::from_chars(first, last, u);
    if (ec == std::errc::result_out_of_range) return fail(ecode::OutOfRange, "'" + s + "' overflows 64 bits");
    if (ec != std::errc{} || ptr != last) return fail(ecode::UnparseableString, "'" + s + "' is not an integer");
    return Wide{u};
}

Result<double> parse_float(const std::string& s) {
    double d = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(d))
        return fail(ecode::UnparseableString, "'" + s + "' is not a finite number");
    return d;
}

/// Source payload read according to the source type's base.
struct Payload {
    BaseType base = BaseType::Int;
    Wide integer = 0;
    double real = 0;
    bool flag = false;
    std::string text;
};

Payload read(const Value& v, const DataTypeDef& t) {
    Payload p;
    p.base = t.base;
    switch (t.base) {
        case BaseType::Int:
        case BaseType::Uint: p.integer = detail::integer_of(v).value_or(0); break;
        case BaseType::Float:
            if (auto d = detail::float_of(v))
                p.real = *d;
            else if (auto i = detail::integer_of(v))
                p.real = static_cast<double>(*i);
            break;
        case BaseType::Bool: p.flag = std::get<bool>(v); break;
        case BaseType::String: p.text = std::get<std::string>(v); break;
        case BaseType::Enum:
            if (auto* e = std::get_if<EnumLiteral>(&v))
                p.text = e->name;
            else
                p.text = std::get<std::string>(v);
            break;
    }
    return p;
}

Result<Value> to_integer(const Payload& p, const Value& v, const DataTypeDef& tgt) {
    Wide i = 0;
    switch (p.base) {
        case BaseType::Int:
        case BaseType::Uint: i = p.integer; break;
        case BaseType::Float:
            if (p.real != std::floor(p.real) || std::fabs(p.real) >= 0x1p126) return out_of_range(v, tgt);
            i = static_cast<Wide>(p.real);
            break;
        case BaseType::String: {
            auto parsed = parse_integer(p.text);
            if (!parsed) return parsed.error();
            i = *parsed;
            break;
        }
        default:
            return fail(ecode::IncompatibleBases,
                        std::string(to_string(p.base)) + " cannot convert to " + std::string(to_string(tgt.base)));
    }
    if (!detail::integer_fits(i, tgt)) return out_of_range(v, tgt);
    return detail::integer_value(i, tgt.base);
}

Result<Value> to_float(const Payload& p, const Value& v, const DataTypeDef& tgt) {
    double d = 0;
    switch (p.base) {
        case BaseType::Int:
        case BaseType::Uint:
            d = static_cast<double>(p.integer);
            if (static_cast<Wide>(d) != p.integer) return out_of_range(v, tgt);
            break;
        case BaseType::Float: d = p.real; break;
        case BaseType::String: {
            auto parsed = parse_float(p.text);
            if (!parsed) return parsed.error();
            d = *parsed;
            break;
        }
        default:
            return fail(ecode::IncompatibleBases, std::string(to_string(p.base)) + " cannot convert to float");
    }
    if (!detail::float_fits(d, tgt)) return out_of_range(v, tgt);
    return Value{d};
}

Value to_text(const Payload& p) {
    switch (p.base) {
        case BaseType::Int:
        case BaseType::Uint: return Value{std::in_place_type<std::string>, decimal(p.integer)};
        case BaseType::Float: return Value{std::in_place_type<std::string>, decimal(p.real)};
        case BaseType::Bool: return Value{std::in_place_type<std::string>, p.flag ? "true" : "false"};
        case BaseType::String:
        case BaseType::Enum: break;
    }
    return Value{std::in_place_type<std::string>, p.text};
}

}  // namespace

Result<Value> convert_value(const Value& v, const DataTypeDef& srcType, const DataTypeDef& tgtType) {
    if (srcType == tgtType) return v;
    const auto p = read(v, srcType);
    switch (tgtType.base) {
        case BaseType::Int:
        case BaseType::Uint: return to_integer(p, v, tgtType);
        case BaseType::Float: return to_float(p, v, tgtType);
        case BaseType::String: return to_text(p);
        case BaseType::Bool:
            if (p.base == BaseType::Bool) return Value{std::in_place_type<bool>, p.flag};
            break;
        case BaseType::Enum:
            if (p.base == BaseType::Enum) {
                if (tgtType.has_literal(p.text)) return Value{EnumLiteral{p.text}};
                return fail(ecode::NoEnumLiteral, "'" + tgtType.name + "' has no literal " + p.text);
            }
            break;
    }
    return fail(ecode::IncompatibleBases, std::string(to_string(srcType.base)) + " cannot convert to " +
                                              std::string(to_string(tgtType.base)));
}

Result<std::int64_t> normalize_priority(std::int64_t v, const std::optional<PriorityRange>& src,
                                        const std::optional<PriorityRange>& tgt) {
    if (!src || !tgt) return fail(ecode::MissingRange, "priority normalization needs a priorityRange on both platforms");
    if (!src->contains(v)) return fail(ecode::OutOfRange, std::to_string(v) + " lies outside the source priority range");
    using U = unsigned __int128;
    auto distance = [](std::int64_t a, std::int64_t b) -> U {
        return static_cast<U>(a > b ? Wide{a} - Wide{b} : Wide{b} - Wide{a});
    };
    const U offset = distance(v, src->lowest_urgency());
    const U span = distance(src->highest_urgency(), src->lowest_urgency());
    const U target_span = distance(tgt->highest_urgency(), tgt->lowest_urgency());
    // k = round_half_up(offset * target_span / span) without overflowing 128 bits.
    const U q = target_span / span;
    const U r = target_span % span;
    const U t = offset * r;
    const U k = offset * q + t / span + (2 * (t % span) >= span ? 1 : 0);
    const Wide step = static_cast<Wide>(k);
    const Wide base = tgt->lowest_urgency();
    const Wide result = tgt->highest_urgency() > tgt->lowest_urgency() ? base + step : base - step;
    return static_cast<std::int64_t>(result);
}

}  // namespace prt
