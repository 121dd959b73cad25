#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace mcwf::bench {

using Row = std::vector<std::string>;

// %.17g, with "nan"/"inf"/"-inf" spelled out.
std::string format_number(double v);
std::string format_number(long long v);

// Comma-separated, '\n' line endings, header first. Fields are written verbatim.
void write_csv(const std::string& path, const Row& header, const std::vector<Row>& rows);
void write_json(const std::string& path, const nlohmann::json& doc);

inline constexpr const char* kManifestSchema = "mcwf-manifest/1";

// Empty when the manifest matches the documented schema; otherwise one message per violation.
std::vector<std::string> validate_manifest(const nlohmann::json& doc);

}  // namespace mcwf::bench
