#pragma once

// Schema-versioned command output in three renderings that carry the same
// fields: human (key: value), csv (key,value or a table) and structured JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mubent/error.hpp"

#ifndef MUBENT_VERSION
#define MUBENT_VERSION "0.0.0"
#endif

namespace mubent::report {

inline constexpr int schema_version = 1;

enum class Format { human, csv, structured };

inline Format parse_format(std::string_view s) {
    if (s == "human") return Format::human;
    if (s == "csv") return Format::csv;
    if (s == "json" || s == "structured" || s == "json-like-structured") return Format::structured;
    throw Error(ErrorKind::range, "unknown format '" + std::string(s) + "' (human, csv, json)");
}

using Value = std::variant<double, std::int64_t, bool, std::string, std::vector<double>>;

struct Field {
    std::string name;
    Value value;
    bool entropy = false;  // converted to bits on request
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Value>> rows;
};

struct OutputRecord {
    std::string command;
    std::vector<Field> inputs;
    std::vector<Field> values;
    std::optional<std::uint64_t> seed;
    std::optional<Table> table;
    std::optional<std::string> error;

    OutputRecord& input(std::string name, Value v) {
        inputs.push_back({std::move(name), std::move(v), false});
        return *this;
    }
    OutputRecord& value(std::string name, Value v) {
        values.push_back({std::move(name), std::move(v), false});
        return *this;
    }
    OutputRecord& entropy(std::string name, double v) {
        values.push_back({std::move(name), v, true});
        return *this;
    }
    const Field* find(std::string_view name) const {
        for (const auto& f : values)
            if (f.name == name) return &f;
        return nullptr;
    }
};

/// 17 significant digits, C locale, so every double round-trips.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline double display(double x, bool entropy, bool bits) { return entropy && bits ? x / std::log(2.0) : x; }

inline std::string text(const Value& v, bool entropy, bool bits) {
    struct Visitor {
        bool entropy, bits;
        std::string operator()(double x) const { return format_number(display(x, entropy, bits)); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const std::vector<double>& xs) const {
            std::string out;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ' ';
                out += format_number(display(xs[i], entropy, bits));
            }
            return out;
        }
    };
    return std::visit(Visitor{entropy, bits}, v);
}

inline nlohmann::ordered_json json_value(const Value& v, bool entropy, bool bits) {
    struct Visitor {
        bool entropy, bits;
        nlohmann::ordered_json operator()(double x) const { return display(x, entropy, bits); }
        nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
        nlohmann::ordered_json operator()(bool x) const { return x; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(const std::vector<double>& xs) const {
            auto arr = nlohmann::ordered_json::array();
            for (double x : xs) arr.push_back(display(x, entropy, bits));
            return arr;
        }
    };
    return std::visit(Visitor{entropy, bits}, v);
}

inline std::vector<std::pair<std::string, std::string>> flat_fields(const OutputRecord& r, bool bits) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("schema_version", std::to_string(schema_version));
    out.emplace_back("command", r.command);
    for (const auto& f : r.inputs) out.emplace_back("input." + f.name, text(f.value, f.entropy, bits));
    for (const auto& f : r.values) out.emplace_back(f.name, text(f.value, f.entropy, bits));
    if (r.error) out.emplace_back("error", *r.error);
    out.emplace_back("provenance.version", MUBENT_VERSION);
    if (r.seed) out.emplace_back("provenance.seed", std::to_string(*r.seed));
    out.emplace_back("provenance.units", bits ? "bits" : "nats");
    return out;
}

} // namespace detail

inline void render(std::ostream& os, const OutputRecord& r, Format format, bool bits = false) {
    switch (format) {
    case Format::human:
        for (const auto& [k, v] : detail::flat_fields(r, bits)) os << k << ": " << v << '\n';
        break;
    case Format::csv:
        if (r.table) {
            for (std::size_t i = 0; i < r.table->header.size(); ++i) os << (i ? "," : "") << r.table->header[i];
            os << '\n';
            for (const auto& row : r.table->rows) {
                for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::text(row[i], false, false);
                os << '\n';
            }
        } else {
            os << "field,value\n";
            for (const auto& [k, v] : detail::flat_fields(r, bits)) os << k << ',' << v << '\n';
        }
        break;
    case Format::structured: {
        nlohmann::ordered_json j;
        j["schema_version"] = schema_version;
        j["command"] = r.command;
        auto& in = j["inputs"] = nlohmann::ordered_json::object();
        for (const auto& f : r.inputs) in[f.name] = detail::json_value(f.value, f.entropy, bits);
        auto& vals = j["values"] = nlohmann::ordered_json::object();
        for (const auto& f : r.values) vals[f.name] = detail::json_value(f.value, f.entropy, bits);
        if (r.error) j["error"] = *r.error;
        auto& prov = j["provenance"] = nlohmann::ordered_json::object();
        prov["version"] = MUBENT_VERSION;
        if (r.seed) prov["seed"] = *r.seed;
        prov["units"] = bits ? "bits" : "nats";
        os << j.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << '\n';
        break;
    }
    }
}

inline std::string render_to_string(const OutputRecord& r, Format format, bool bits = false) {
    std::ostringstream os;
    render(os, r, format, bits);
    return os.str();
}

} // namespace mubent::report
