#pragma once

#include <filesystem>
#include <string>

#include "hemsim/domain.hpp"

namespace hemsim {

// Scenario and tariff files are YAML; see docs/file_formats.md. Every parse
// or invariant failure throws ParseError anchored to "<source>:<line>".
// A baseline that breaks schedule rules throws InfeasibleSchedule instead.

HouseholdScenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
HouseholdScenario load_scenario(const std::filesystem::path& path);
std::string write_scenario(const HouseholdScenario& scenario);

TariffDay parse_tariff(const std::string& text, const std::string& source = "<tariff>");
TariffDay load_tariff(const std::filesystem::path& path);
std::string write_tariff(const TariffDay& tariff);

/// Reads a whole file; throws InvalidInput naming the path when it cannot.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace hemsim
