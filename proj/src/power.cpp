// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/power.hpp"

#include <algorithm>

#include "bpc/errors.hpp"

namespace bpc {

namespace {

double apply_cap(double power_dbm, const PowerConfig& cfg) {
  return std::clamp(power_dbm, 0.0, cfg.max_power_dbm);
}

}  // namespace

const char* branch_name(PowerBranch b) noexcept {
  switch (b) {
    case PowerBranch::congested: return "congested";
    case PowerBranch::clear_far: return "clear_far";
    case PowerBranch::clear_mid: return "clear_mid";
    case PowerBranch::clear_near: return "clear_near";
    case PowerBranch::capped: return "capped";
    case PowerBranch::suppressed: return "suppressed";
    case PowerBranch::hold: return "hold";
  }
  return "unknown";
}

double power_difference(double max_bp_dbm, double min_bp_dbm) {
  if (max_bp_dbm < min_bp_dbm) {
    throw Error(Errc::inconsistent_assessment, "max observed power below min observed power");
  }
  return max_bp_dbm - min_bp_dbm;
}

PowerDecision initial_decision(double power_dbm) noexcept {
  PowerDecision d;
  d.pow_u_dbm = power_dbm;
  d.branch = PowerBranch::hold;
  d.advertise_max_p_dbm = power_dbm;
  d.advertise_min_p_dbm = power_dbm;
  d.pd_dbm = 0.0;
  return d;
}

PowerDecision congested_power(const ChannelAssessment& a, const PowerConfig& cfg,
                              const PowerDecision& prev) {
  const double pd = power_difference(a.max_bp_dbm, a.min_bp_dbm);
  const double candidate = a.min_bp_dbm + pd * (a.success_pct / 100.0);

  PowerDecision d;
  d.pd_dbm = pd;
  if (candidate > a.mi_mp_dbm && candidate < a.ma_mp_dbm) {
    d.branch = PowerBranch::congested;
    d.pow_u_dbm = apply_cap(candidate, cfg);
    d.advertise_max_p_dbm = a.max_bp_dbm;
    d.advertise_min_p_dbm = a.min_bp_dbm;
  } else {
    d.branch = PowerBranch::hold;
    d.pow_u_dbm = apply_cap(prev.pow_u_dbm, cfg);
    d.advertise_max_p_dbm = prev.advertise_max_p_dbm;
    d.advertise_min_p_dbm = prev.advertise_min_p_dbm;
  }
  return d;
}

PowerDecision clear_channel_power(const ChannelAssessment& a, const PowerConfig& cfg) {
  const double pd = power_difference(a.max_bp_dbm, a.min_bp_dbm);
  const double d_strongest = a.d_max_sender_m;

  PowerDecision d;
  d.pd_dbm = pd;
  d.advertise_max_p_dbm = a.max_bp_dbm;
  d.advertise_min_p_dbm = a.min_bp_dbm;

  if (d_strongest > cfg.far_threshold_m) {
    d.branch = PowerBranch::clear_far;
    d.pow_u_dbm = a.max_bp_dbm;
  } else if (d_strongest > cfg.mid_threshold_m) {
    const double candidate = a.max_bp_dbm + pd * 0.5;
    if (candidate <= cfg.max_power_dbm) {
      d.branch = PowerBranch::clear_mid;
      d.pow_u_dbm = candidate;
    } else {
      d.branch = PowerBranch::capped;
      d.pow_u_dbm = cfg.max_power_dbm;
    }
  } else {
    const double candidate = a.max_bp_dbm + pd;
    if (candidate <= cfg.max_power_dbm) {
      d.branch = PowerBranch::clear_near;
      d.pow_u_dbm = candidate;
    } else {
      d.branch = PowerBranch::capped;
      d.pow_u_dbm = cfg.max_power_dbm;
    }
  }
  d.pow_u_dbm = apply_cap(d.pow_u_dbm, cfg);
  return d;
}

PowerDecision decide_power(const std::optional<ChannelAssessment>& a, const PowerDecision& prev,
                           const PowerConfig& cfg) {
  if (!a.has_value()) {
    PowerDecision d = prev;
    d.branch = PowerBranch::hold;
    d.pow_u_dbm = apply_cap(prev.pow_u_dbm, cfg);
    return d;
  }

  constexpr double kClearTolerance = 1e-9;
  if (a->success_pct >= 100.0 - kClearTolerance) {
    return clear_channel_power(*a, cfg);
  }

  if (cfg.congestion_gate_pct > 0.0 && a->success_pct >= cfg.congestion_gate_pct) {
    PowerDecision d = prev;
    d.branch = PowerBranch::hold;
    d.pow_u_dbm = apply_cap(prev.pow_u_dbm, cfg);
    return d;
  }

  return congested_power(*a, cfg, prev);
}

PowerDecision fixed_power_baseline(const PowerConfig& cfg) noexcept {
  PowerDecision d;
  d.pow_u_dbm = cfg.max_power_dbm;
  d.branch = PowerBranch::hold;
  d.advertise_max_p_dbm = cfg.max_power_dbm;
  d.advertise_min_p_dbm = cfg.max_power_dbm;
  d.pd_dbm = 0.0;
  return d;
}

}  // namespace bpc
