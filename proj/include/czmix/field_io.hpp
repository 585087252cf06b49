#pragma once

/**
 * @file field_io.hpp
 * @brief Textual (JSON) field files.
 *
 * Layout:
 *
 *     { "grid":  {"start": s, "step": h, "count": n},          // 1-D fields
 *       "xgrid": {...}, "ygrid": {...},                         // 2-D fields
 *       "values": [[re, im], ...] }                             // row-major, x fast
 *
 * Frequency-domain axes carry `"domain": "frequency"` and `"origin"` (the
 * start of the spatial partner grid) inside their grid object; a field whose
 * axes are all frequency axes also carries a top-level `"domain": "frequency"`.
 * Doubles are written in shortest round-trip form, so write then read
 * reproduces every sample bit for bit.
 */

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "czmix/error.hpp"
#include "czmix/grid.hpp"

namespace czmix {

using AnyField = std::variant<Field1D, Field2D>;

namespace detail {

inline nlohmann::json axis_to_json(const Axis& a)
{
    nlohmann::json g = {{"start", a.grid.start()}, {"step", a.grid.step()}, {"count", a.grid.count()}};
    if (a.domain == Domain::frequency) {
        g["domain"] = "frequency";
        g["origin"] = a.space_origin;
    }
    return g;
}

inline nlohmann::json values_to_json(std::span<const cplx> v)
{
    nlohmann::json arr = nlohmann::json::array();
    arr.get_ref<nlohmann::json::array_t&>().reserve(v.size());
    for (const auto& z : v)
        arr.push_back(nlohmann::json::array({z.real(), z.imag()}));
    return arr;
}

inline double json_number(const nlohmann::json& j, const char* what)
{
    if (!j.is_number())
        throw FormatError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw FormatError(std::string("non-finite number for ") + what);
    return v;
}

inline Axis axis_from_json(const nlohmann::json& g, bool default_frequency)
{
    if (!g.is_object())
        throw FormatError("grid entry must be an object");
    for (const char* key : {"start", "step", "count"})
        if (!g.contains(key))
            throw FormatError(std::string("grid is missing '") + key + "'");
    const double start = json_number(g["start"], "grid.start");
    const double step = json_number(g["step"], "grid.step");
    if (!g["count"].is_number_integer() || g["count"].get<long long>() < 2)
        throw FormatError("grid.count must be an integer >= 2");
    Domain dom = default_frequency ? Domain::frequency : Domain::space;
    if (g.contains("domain")) {
        const auto d = g["domain"].get<std::string>();
        if (d == "frequency")
            dom = Domain::frequency;
        else if (d == "space")
            dom = Domain::space;
        else
            throw FormatError("unknown axis domain '" + d + "'");
    }
    const double origin = g.contains("origin") ? json_number(g["origin"], "grid.origin") : 0.0;
    try {
        return Axis(UniformGrid1D(start, step, g["count"].get<std::size_t>()), dom, origin);
    } catch (const ParameterError& e) {
        throw FormatError(std::string("invalid grid: ") + e.what());
    }
}

inline std::vector<cplx> values_from_json(const nlohmann::json& arr, std::size_t expected)
{
    if (!arr.is_array())
        throw FormatError("'values' must be an array");
    if (arr.size() != expected)
        throw FormatError("'values' has " + std::to_string(arr.size()) + " entries, grid declares " +
                          std::to_string(expected));
    std::vector<cplx> out;
    out.reserve(expected);
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
            throw FormatError("each value must be a [re, im] pair");
        out.emplace_back(json_number(pair[0], "value.re"), json_number(pair[1], "value.im"));
    }
    return out;
}

} // namespace detail

inline nlohmann::json field_to_json(const Field1D& f)
{
    nlohmann::json j;
    if (f.domain() == Domain::frequency)
        j["domain"] = "frequency";
    j["grid"] = detail::axis_to_json(f.axis());
    j["values"] = detail::values_to_json(f.values());
    return j;
}

inline nlohmann::json field_to_json(const Field2D& f)
{
    nlohmann::json j;
    if (f.x_axis().domain == Domain::frequency && f.y_axis().domain == Domain::frequency)
        j["domain"] = "frequency";
    j["xgrid"] = detail::axis_to_json(f.x_axis());
    j["ygrid"] = detail::axis_to_json(f.y_axis());
    j["values"] = detail::values_to_json(f.values());
    return j;
}

inline AnyField field_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw FormatError("field file must hold a single object");
    bool freq = false;
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (!d.is_string() || (d != "frequency" && d != "space"))
            throw FormatError("top-level 'domain' must be \"space\" or \"frequency\"");
        freq = d == "frequency";
    }
    if (!j.contains("values"))
        throw FormatError("field is missing 'values'");
    try {
        if (j.contains("grid")) {
            Axis a = detail::axis_from_json(j["grid"], freq);
            auto v = detail::values_from_json(j["values"], a.count());
            return Field1D(std::move(a), std::move(v));
        }
        if (j.contains("xgrid") && j.contains("ygrid")) {
            Axis ax = detail::axis_from_json(j["xgrid"], freq);
            Axis ay = detail::axis_from_json(j["ygrid"], freq);
            auto v = detail::values_from_json(j["values"], ax.count() * ay.count());
            return Field2D(std::move(ax), std::move(ay), std::move(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed field: ") + e.what());
    }
    throw FormatError("field needs either 'grid' or both 'xgrid' and 'ygrid'");
}

inline AnyField parse_field(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("field file is not valid JSON: ") + e.what());
    }
    return field_from_json(j);
}

inline AnyField read_field(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open field file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_field(ss.str());
}

inline Field2D read_field2d(const std::string& path)
{
    auto any = read_field(path);
    if (auto* f = std::get_if<Field2D>(&any))
        return std::move(*f);
    throw FormatError("'" + path + "' holds a 1-D field, expected 2-D");
}

inline Field1D read_field1d(const std::string& path)
{
    auto any = read_field(path);
    if (auto* f = std::get_if<Field1D>(&any))
        return std::move(*f);
    throw FormatError("'" + path + "' holds a 2-D field, expected 1-D");
}

template <typename F>
void write_field(const std::string& path, const F& field)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write field file '" + path + "'");
    out << field_to_json(field).dump() << '\n';
}

} // namespace czmix
