// SPDX-License-Identifier: Apache-2.0
//
// Flat key-value scenario files: one `key = value` per line, `#` starts a
// comment, users as repeated `user = x,y` lines. Powers are written in
// dBm and converted to watts on load.
#pragma once

#include <iosfwd>
#include <string>

#include "pinchopt/model.hpp"

namespace pinchopt {

/// Parses a scenario; throws std::runtime_error naming the offending line
/// on malformed input and std::invalid_argument when the parsed scenario
/// violates its invariants.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig read_scenario_file(const std::string& path);

void write_scenario(std::ostream& out, const ScenarioConfig& cfg);
void write_scenario_file(const std::string& path, const ScenarioConfig& cfg);

}  // namespace pinchopt
