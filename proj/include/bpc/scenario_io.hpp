// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bpc/sim.hpp"

namespace bpc {

/// Parses the `key = value` scenario format (UTF-8, '#' comments).
///
/// Required keys: vehicles, duration_s. Everything else falls back to the
/// Scenario defaults. Unknown keys, duplicates, malformed numbers and
/// out-of-range values are all collected and reported together in one
/// Error(Errc::bad_scenario), each message carrying its line number.
Scenario parse_scenario(std::string_view text);

/// parse_scenario over a file's contents. Throws Error(Errc::io_error) when
/// the file cannot be read.
Scenario parse_scenario_file(const std::filesystem::path& path);

/// Canonical rendering: every key, fixed order, values round-trip exactly
/// through parse_scenario.
std::string render_scenario(const Scenario& s);

}  // namespace bpc
