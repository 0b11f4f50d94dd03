#pragma once

// Text form of ScenarioConfig. One `key = value` per line, `#` starts a
// comment, `[section]` prefixes the keys that follow:
//
//   [bath]
//   family = ohmic
//   lambda = 0.01
//   s = 3
//   omega_c = 10
//
//   beta = 1           # top-level keys may also appear before any section
//   init.theta = pi/4
//   time.end = 20
//
// Numbers accept the forms 0.5, 1e-3, pi, 2pi, pi/8, 3*pi/4.

#include <string>
#include <string_view>

#include "dephase/scenario.hpp"

namespace dephase {

/// Parses a number or simple pi expression. Throws ConfigError naming `key`.
double parse_number(std::string_view text, std::string_view key);

/// Keys absent from the text keep their value in `base`.
ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base = {});

/// Throws IoError if the file cannot be read.
ScenarioConfig load_config_file(const std::string& path, const ScenarioConfig& base = {});

/// Inverse of parse_config (17 significant digits).
std::string to_config_text(const ScenarioConfig& cfg);

/// Applies one `key=value` assignment and revalidates.
void apply_override(ScenarioConfig& cfg, std::string_view assignment);
void set_field(ScenarioConfig& cfg, std::string_view key, std::string_view value);
void set_numeric_field(ScenarioConfig& cfg, std::string_view key, double value);

}  // namespace dephase
