// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <array>
#include <string>
#include <vector>

#include "bpc/power.hpp"

namespace bpc {

/// Result of replaying the library's hand-checkable reference trace: one
/// vehicle hearing five neighbors (A..E) with known loss patterns, distances
/// and piggybacked powers. Every figure here can be re-derived by hand,
/// which is what the test suite and the `golden` CLI subcommand do with it.
struct GoldenTrace {
  std::vector<std::string> neighbor_names;
  std::vector<double> fail_per_m;  // per-neighbor, from the raw sequence sets
  ChannelAssessment assessment;    // full pipeline result
  PowerDecision decision;          // decide_power on the assessment

  /// A hand-rounded snapshot of the fail column (A..E: 1.538, 2.220, 2.600,
  /// 1.110, 2.667) and the figures that follow from taking the rounded
  /// table at face value. Kept alongside the exact chain as a cross-check.
  std::array<double, 5> tabulated_fail;
  double tabulated_f = 0.0;
  double tabulated_s = 0.0;
  double tabulated_pow_u = 0.0;
};

/// Builds the five-neighbor fixture through the real NeighborTable /
/// decide_power pipeline and returns every intermediate value.
GoldenTrace golden_trace();

}  // namespace bpc
