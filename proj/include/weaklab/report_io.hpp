#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "weaklab/config.hpp"
#include "weaklab/verify.hpp"

namespace weaklab {

nlohmann::json to_json(const Cube& q);
nlohmann::json to_json(const MuckenhouptReport& rep);
nlohmann::json to_json(const HypothesisComponent& comp);
nlohmann::json to_json(const InequalityReport& rep);
nlohmann::json to_json(const RefinedReport& rep);
nlohmann::json to_json(const Theorem23Report& rep);

/// Common envelope: schema/tool version, config hash, grid and family.
nlohmann::json report_envelope(const RunConfig& config);

/// Shortest-exact decimal for CSV cells ('.' decimal point).
std::string csv_number(double x);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

} // namespace weaklab
