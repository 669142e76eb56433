// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "bpc/errors.hpp"

namespace bpc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Field {
  std::string value;
  int line = 0;
};

bool parse_double(const std::string& s, double& out) {
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && !s.empty() && errno == 0;
}

bool parse_int(const std::string& s, int& out) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || s.empty() || errno != 0) return false;
  if (v < INT_MIN || v > INT_MAX) return false;
  out = static_cast<int>(v);
  return true;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  errno = 0;
  char* end = nullptr;
  if (!s.empty() && s[0] == '-') return false;
  out = std::strtoull(s.c_str(), &end, 10);
  return end == s.c_str() + s.size() && !s.empty() && errno == 0;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "road_length_m",  "vehicles",      "spacing_m",
      "speed_mps",      "duration_s",    "beacon_interval_ms",
      "seed",           "protocol",      "path_loss_exponent",
      "congestion_gate_pct", "max_power_dbm", "initial_power_jitter_dbm",
  };
  return keys;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  std::vector<std::string> errors;
  std::map<std::string, Field> fields;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                            : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};

    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (fields.count(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key +
                       "' (first on line " + std::to_string(fields[key].line) + ")");
      continue;
    }
    if (value.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
      continue;
    }
    fields[key] = Field{value, line_no};
  }

  Scenario s;
  auto take_double = [&](const char* key, double& out) {
    auto it = fields.find(key);
    if (it == fields.end()) return;
    if (!parse_double(it->second.value, out)) {
      errors.push_back("line " + std::to_string(it->second.line) + ": '" + key +
                       "' is not a number: " + it->second.value);
    }
  };
  auto take_int = [&](const char* key, int& out) {
    auto it = fields.find(key);
    if (it == fields.end()) return;
    if (!parse_int(it->second.value, out)) {
      errors.push_back("line " + std::to_string(it->second.line) + ": '" + key +
                       "' is not an integer: " + it->second.value);
    }
  };

  take_double("road_length_m", s.road_length_m);
  take_int("vehicles", s.vehicle_count);
  take_double("spacing_m", s.spacing_m);
  take_double("speed_mps", s.speed_mps);
  take_int("duration_s", s.duration_s);
  take_int("beacon_interval_ms", s.beacon_interval_ms);
  take_double("path_loss_exponent", s.path_loss_exponent);
  take_double("congestion_gate_pct", s.congestion_gate_pct);
  take_double("max_power_dbm", s.max_power_dbm);
  take_double("initial_power_jitter_dbm", s.initial_power_jitter_dbm);

  if (auto it = fields.find("seed"); it != fields.end()) {
    if (!parse_u64(it->second.value, s.seed)) {
      errors.push_back("line " + std::to_string(it->second.line) +
                       ": 'seed' is not an unsigned integer: " + it->second.value);
    }
  }
  if (auto it = fields.find("protocol"); it != fields.end()) {
    if (it->second.value == "bpc") {
      s.protocol = Protocol::bpc;
    } else if (it->second.value == "fixed") {
      s.protocol = Protocol::fixed;
    } else {
      errors.push_back("line " + std::to_string(it->second.line) +
                       ": 'protocol' must be 'bpc' or 'fixed', got '" + it->second.value + "'");
    }
  }

  for (const char* required : {"vehicles", "duration_s"}) {
    if (!fields.count(required)) {
      errors.push_back(std::string("missing required key '") + required + "'");
    }
  }

  // Range checks only make sense for a structurally complete scenario.
  if (errors.empty()) {
    for (const std::string& msg : validate_scenario(s)) errors.push_back(msg);
  }

  if (!errors.empty()) {
    std::string what = "scenario has " + std::to_string(errors.size()) + " problem(s):";
    for (const std::string& e : errors) what += "\n  " + e;
    throw Error(Errc::bad_scenario, what);
  }
  return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open scenario file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string render_scenario(const Scenario& s) {
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out;
  out += "road_length_m = " + num(s.road_length_m) + "\n";
  out += "vehicles = " + std::to_string(s.vehicle_count) + "\n";
  out += "spacing_m = " + num(s.spacing_m) + "\n";
  out += "speed_mps = " + num(s.speed_mps) + "\n";
  out += "duration_s = " + std::to_string(s.duration_s) + "\n";
  out += "beacon_interval_ms = " + std::to_string(s.beacon_interval_ms) + "\n";
  out += "seed = " + std::to_string(s.seed) + "\n";
  out += std::string("protocol = ") + protocol_name(s.protocol) + "\n";
  out += "path_loss_exponent = " + num(s.path_loss_exponent) + "\n";
  out += "congestion_gate_pct = " + num(s.congestion_gate_pct) + "\n";
  out += "max_power_dbm = " + num(s.max_power_dbm) + "\n";
  out += "initial_power_jitter_dbm = " + num(s.initial_power_jitter_dbm) + "\n";
  return out;
}

}  // namespace bpc
