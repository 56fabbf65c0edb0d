#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "onebit/config.hpp"
#include "onebit/experiments.hpp"

namespace onebit {

/// A parsed scenario file: system parameters plus experiment axes.
struct Scenario {
  SystemConfig cfg;
  ExperimentSpec spec;
};

/// Defaults for an experiment kind at desk or paper scale.
Scenario default_scenario(ExperimentKind kind, bool paper_scale = false);

/// Parses the key = value scenario grammar (see README). Unknown keys,
/// malformed values and repeated keys throw ConfigError with the line number.
/// The `experiment` and `scale` keys select the defaults the remaining keys
/// override, so they may appear anywhere in the file.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Keys present in a scenario text, without interpreting their values.
std::vector<std::string> scenario_keys(std::string_view text);

}  // namespace onebit
