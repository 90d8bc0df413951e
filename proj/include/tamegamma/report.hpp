#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tamegamma/scenarios.hpp"

namespace tame {

// {scenario, config, checks, verdict, data, timing}.  Everything except `timing`
// is a function of the configuration and seed.
nlohmann::ordered_json report_json(const VerificationReport& rep);

// Writes the report through a temporary file in the same directory and a rename.
void write_report(const std::filesystem::path& path, const VerificationReport& rep);

// Field spec, uniformizer value, tame exponent, wild part and depth of a character.
nlohmann::ordered_json character_json(const MultChar& chi);

// One line per check for the terminal.
std::string report_summary(const VerificationReport& rep);

}  // namespace tame
