// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/golden.hpp"

#include <initializer_list>

#include "bpc/neighbor.hpp"

namespace bpc {

namespace {

struct FixtureRow {
  const char* name;
  std::initializer_list<std::uint16_t> seqs;  // heard in the window, 10 expected
  double d_m;
  double max_p_dbm;
  double min_p_dbm;
  double pow_u_dbm;
};

// One second in the life of vehicle X: five neighbors, each beaconing at
// 10 Hz, with the listed sequence numbers actually getting through.
const FixtureRow kRows[] = {
    {"A", {15, 16, 17, 18, 20, 21, 23, 24}, 13.0, 28.0, 24.0, 25.0},
    {"B", {71, 72, 75, 78, 79, 80}, 18.0, 29.0, 23.0, 28.0},
    {"C", {89, 90, 96, 97}, 23.0, 28.0, 24.0, 29.0},
    {"D", {22, 23, 24, 25, 26, 27, 29, 30}, 18.0, 27.0, 24.0, 28.0},
    {"E", {61, 62, 63, 67, 69, 70}, 15.0, 26.0, 23.0, 28.0},
};

}  // namespace

GoldenTrace golden_trace() {
  GoldenTrace trace;
  trace.tabulated_fail = {1.538, 2.220, 2.600, 1.110, 2.667};

  NeighborTable table;
  const Vec2 own_pos{0.0, 0.0};
  for (const FixtureRow& row : kRows) {
    trace.neighbor_names.emplace_back(row.name);
    for (std::uint16_t seq : row.seqs) {
      Beacon b;
      b.seq = seq;
      b.interval_ms = 100;
      b.timestamp_ms = 900;
      b.elp = elp_from_string(row.name);
      b.pos_x_m = row.d_m;
      b.pos_y_m = 0.0;
      b.speed_mps = 20.0;
      b.dir_deg = 90.0;
      b.max_p_dbm = row.max_p_dbm;
      b.min_p_dbm = row.min_p_dbm;
      b.pow_u_dbm = row.pow_u_dbm;
      table.record_beacon(b, own_pos, 900);
    }
  }

  auto assessment = table.assess(1000);
  trace.assessment = *assessment;

  // assess() keeps the recomputed loss columns on the records; the map is
  // ordered by identity, so this reads out A..E.
  for (const auto& [elp, rec] : table.records()) {
    (void)elp;
    trace.fail_per_m.push_back(rec.f_per_m);
  }

  const PowerConfig cfg;
  trace.decision = decide_power(assessment, initial_decision(cfg.initial_power_dbm), cfg);

  trace.tabulated_f = overall_fault(
      std::span<const double>(trace.tabulated_fail.data(), trace.tabulated_fail.size()));
  trace.tabulated_s =
      success_percentage(trace.tabulated_f, trace.assessment.max_d_m, trace.assessment.min_d_m);
  trace.tabulated_pow_u =
      trace.assessment.min_bp_dbm +
      power_difference(trace.assessment.max_bp_dbm, trace.assessment.min_bp_dbm) *
          (trace.tabulated_s / 100.0);
  return trace;
}

}  // namespace bpc
