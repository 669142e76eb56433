// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <optional>

#include "bpc/neighbor.hpp"

namespace bpc {

enum class PowerBranch {
  congested,   // adjusted inside the observed power span
  clear_far,   // clear channel, strongest sender beyond the far threshold
  clear_mid,   // clear channel, strongest sender between the thresholds
  clear_near,  // clear channel, strongest sender close by
  capped,      // clear-channel raise hit the regulatory cap
  suppressed,  // reserved for policies that drop the beacon; never emitted here
  hold,        // kept the previous power (no data, or a gate failed)
};

const char* branch_name(PowerBranch b) noexcept;

/// Outcome of one power decision. advertise_* are the values to place in the
/// MaxP/MinP fields of subsequent beacons; pd_dbm is the observed power span
/// the decision was based on.
struct PowerDecision {
  double pow_u_dbm = kMaxPowerDbm;
  PowerBranch branch = PowerBranch::hold;
  double advertise_max_p_dbm = kMaxPowerDbm;
  double advertise_min_p_dbm = kMaxPowerDbm;
  double pd_dbm = 0.0;
};

struct PowerConfig {
  double max_power_dbm = kMaxPowerDbm;  // regulatory cap
  /// Success-percentage gate: when > 0, adjust only while S is below this
  /// value and hold otherwise. 0 disables the gate so any S < 100 adjusts.
  double congestion_gate_pct = 0.0;
  double far_threshold_m = 200.0;
  double mid_threshold_m = 100.0;
  double initial_power_dbm = kMaxPowerDbm;  // used until the first assessment
};

/// Span between the largest and the smallest used power observed among
/// neighbors. Throws Error(Errc::inconsistent_assessment) when inputs are
/// ordered the wrong way around.
double power_difference(double max_bp_dbm, double min_bp_dbm);

/// Decision before any assessment exists: transmit at `power_dbm` and
/// advertise it as both the max and min observed power.
PowerDecision initial_decision(double power_dbm) noexcept;

/// Congested-channel adjustment: candidate = MinBP + PD * S/100. The
/// candidate is adopted only when it falls strictly inside the neighborhood's
/// advertised-maximum span (mi_mp, ma_mp); adoption also refreshes the
/// advertised MaxP/MinP from the assessment. When the gate fails the previous
/// decision is held unchanged, stale advertisement included. Output is always
/// capped at cfg.max_power_dbm.
PowerDecision congested_power(const ChannelAssessment& a, const PowerConfig& cfg,
                              const PowerDecision& prev);

/// Clear-channel (S == 100) rule, keyed on the distance d to the strongest
/// observed sender:
///   d > far threshold: keep MaxBP;
///   d > mid threshold: MaxBP + PD/2, capped;
///   otherwise:         MaxBP + PD, capped.
PowerDecision clear_channel_power(const ChannelAssessment& a, const PowerConfig& cfg);

/// Total decision function: dispatches to the clear or congested rule, or
/// holds the previous decision when no assessment is available (or the
/// configured success gate says the channel is healthy enough to leave
/// alone). Decisions that adopt a new power refresh the advertised
/// MaxP/MinP from the assessment; holds carry the previous advertisement
/// forward unchanged.
PowerDecision decide_power(const std::optional<ChannelAssessment>& a, const PowerDecision& prev,
                           const PowerConfig& cfg);

/// Non-adaptive baseline: always transmit at the configured cap.
PowerDecision fixed_power_baseline(const PowerConfig& cfg) noexcept;

}  // namespace bpc
