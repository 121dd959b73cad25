#include "mcwf/bench/emit.hpp"
#include "mcwf/types.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace mcwf::bench {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_number(long long v) { return std::to_string(v); }

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

void write_row(std::ofstream& out, const Row& row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << row[i];
    }
    out << '\n';
}

}  // namespace

void write_csv(const std::string& path, const Row& header, const std::vector<Row>& rows)
{
    if (rows.empty()) throw Error("no records for '" + path + "'");
    auto out = open_out(path);
    write_row(out, header);
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw ShapeError("row width does not match the header of '" + path + "'");
        write_row(out, r);
    }
    if (!out) throw Error("write failed for '" + path + "'");
}

void write_json(const std::string& path, const nlohmann::json& doc)
{
    auto out = open_out(path);
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

std::vector<std::string> validate_manifest(const nlohmann::json& doc)
{
    std::vector<std::string> errs;
    if (!doc.is_object()) return {"manifest must be an object"};
    auto need = [&](const char* key, auto pred, const char* what) {
        if (!doc.contains(key))
            errs.push_back(std::string("missing '") + key + "'");
        else if (!pred(doc.at(key)))
            errs.push_back(std::string("'") + key + "' must be " + what);
    };
    auto is_string = [](const nlohmann::json& j) { return j.is_string(); };
    auto is_object = [](const nlohmann::json& j) { return j.is_object(); };
    need("schema", [](const nlohmann::json& j) { return j == kManifestSchema; }, kManifestSchema);
    need("tool", [](const nlohmann::json& j) { return j.is_object() && j.contains("name") && j.contains("version"); },
         "an object with name and version");
    need("experiment", is_string, "a string");
    need("preset", is_string, "a string");
    need("config", [](const nlohmann::json& j) {
        if (!j.is_object()) return false;
        for (const auto& [k, v] : j.items())
            if (!v.is_string()) return false;
        return true;
    }, "an object of string values");
    need("derived", is_object, "an object");
    need("conventions", [](const nlohmann::json& j) {
        return j.is_object() && j.contains("snr") && j.contains("delay_rounding") && j.contains("pulses") &&
               j.contains("af") && j.contains("papr_prefix");
    }, "an object with snr, delay_rounding, pulses, af and papr_prefix");
    need("outputs", [](const nlohmann::json& j) {
        if (!j.is_array() || j.empty()) return false;
        for (const auto& o : j) {
            if (!o.is_object() || !o.contains("file") || !o.contains("sha256") || !o.at("file").is_string() ||
                !o.at("sha256").is_string() || o.at("sha256").get<std::string>().size() != 64)
                return false;
        }
        return true;
    }, "a nonempty array of {file, sha256}");
    return errs;
}

}  // namespace mcwf::bench
