// SPDX-License-Identifier: Apache-2.0
//
// Copyright (c) 2026 The fdsim Authors

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fdsim/engine.hpp"

namespace fdsim {

/// Complete configuration tree for a scenario, every key present.
nlohmann::json default_config_json(ScenarioKind scenario);

nlohmann::json to_json(const RunConfig& cfg);

/// Strict: every key must exist in the defaults for the chosen scenario and
/// carry a value of the right type. Throws ConfigError naming the key.
RunConfig from_json(const nlohmann::json& j);

/// Parses "a.b.c=value". The value is read as JSON when it parses (numbers,
/// booleans, arrays), otherwise as a plain string.
std::pair<std::string, nlohmann::json> parse_override(const std::string& assignment);

/// Sets a dotted key, creating intermediate objects.
void apply_override(nlohmann::json& j, const std::string& dotted_key, const nlohmann::json& value);

/// Reads a config file (empty path: defaults only), applies overrides in
/// order, validates.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

}  // namespace fdsim
