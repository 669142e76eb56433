// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/neighbor.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bpc/errors.hpp"

namespace bpc {

namespace {
// Two vehicles can momentarily occupy the same coordinates; keep distances
// strictly positive so the per-meter loss figures stay defined.
constexpr double kMinDistanceM = 0.01;
}  // namespace

double distance_m(Vec2 a, Vec2 b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double reception_percentage(int received, int expected) {
  if (expected <= 0) {
    throw Error(Errc::window_overflow, "expected beacon count must be positive");
  }
  if (received < 0 || received > expected) {
    throw Error(Errc::window_overflow,
                "received " + std::to_string(received) + " beacons in a window expecting " +
                    std::to_string(expected));
  }
  return static_cast<double>(received) / static_cast<double>(expected) * 100.0;
}

double fail_rate(double p_pct, double d_m) {
  if (!(d_m > 0.0) || !std::isfinite(d_m)) {
    throw Error(Errc::degenerate_distance,
                "neighbor distance must be strictly positive, got " + std::to_string(d_m));
  }
  return (100.0 - p_pct) / d_m;
}

double projected_reception(double p_pct, double f_per_m) noexcept {
  return std::max(0.0, p_pct - f_per_m);
}

double overall_fault(std::span<const double> fail_rates_per_m) {
  if (fail_rates_per_m.empty()) {
    throw Error(Errc::no_neighbors, "no neighbor fail rates to average");
  }
  double sum = 0.0;
  for (double f : fail_rates_per_m) sum += f;
  return sum / static_cast<double>(fail_rates_per_m.size());
}

double success_percentage(double overall_fault_per_m, double max_d_m, double min_d_m) {
  if (!(min_d_m > 0.0)) {
    throw Error(Errc::degenerate_distance, "min distance must be strictly positive");
  }
  if (max_d_m < min_d_m) {
    throw Error(Errc::inconsistent_assessment, "max distance below min distance");
  }
  const double s = 100.0 - ((max_d_m + min_d_m) / 2.0) * overall_fault_per_m;
  return std::clamp(s, 0.0, 100.0);
}

void NeighborTable::record_beacon(const Beacon& b, Vec2 own_pos, std::uint64_t /*now_ms*/) {
  NeighborRecord& rec = records_[b.elp];
  rec.elp = b.elp;
  rec.seq_window.insert(b.seq);
  rec.interval_ms = b.interval_ms;
  rec.d_m = std::max(kMinDistanceM, distance_m(own_pos, Vec2{b.pos_x_m, b.pos_y_m}));
  rec.last_max_p_dbm = b.max_p_dbm;
  rec.last_min_p_dbm = b.min_p_dbm;
  rec.last_pow_u_dbm = b.pow_u_dbm;
}

void NeighborTable::reset_windows() {
  for (auto& [elp, rec] : records_) rec.seq_window.clear();
}

std::optional<ChannelAssessment> NeighborTable::assess(std::uint64_t now_ms) {
  if (records_.empty()) return std::nullopt;

  const bool any_live = std::any_of(records_.begin(), records_.end(), [](const auto& kv) {
    return kv.second.beacons_received() > 0;
  });
  if (!any_live) {
    // A fully silent window tells us nothing; forget everyone.
    records_.clear();
    return std::nullopt;
  }

  ChannelAssessment out;
  out.neighbor_count = static_cast<int>(records_.size());
  out.window_end_ms = now_ms;

  std::vector<double> fails;
  fails.reserve(records_.size());
  bool first = true;
  for (auto& [elp, rec] : records_) {
    const int expected = std::max(1, 1000 / std::max<int>(1, rec.interval_ms));
    rec.p_pct = reception_percentage(rec.beacons_received(), expected);
    rec.f_per_m = fail_rate(rec.p_pct, rec.d_m);
    rec.proj_pct = projected_reception(rec.p_pct, rec.f_per_m);
    fails.push_back(rec.f_per_m);

    if (first) {
      out.max_d_m = out.min_d_m = rec.d_m;
      out.max_bp_dbm = out.min_bp_dbm = rec.last_pow_u_dbm;
      out.ma_mp_dbm = out.mi_mp_dbm = rec.last_max_p_dbm;
      out.d_max_sender_m = rec.d_m;
      first = false;
    } else {
      out.max_d_m = std::max(out.max_d_m, rec.d_m);
      out.min_d_m = std::min(out.min_d_m, rec.d_m);
      if (rec.last_pow_u_dbm > out.max_bp_dbm ||
          (rec.last_pow_u_dbm == out.max_bp_dbm && rec.d_m > out.d_max_sender_m)) {
        // Strongest sender; among equals the farthest one is the binding
        // constraint on how far the loudest power in use actually travels.
        out.max_bp_dbm = rec.last_pow_u_dbm;
        out.d_max_sender_m = rec.d_m;
      }
      out.min_bp_dbm = std::min(out.min_bp_dbm, rec.last_pow_u_dbm);
      out.ma_mp_dbm = std::max(out.ma_mp_dbm, rec.last_max_p_dbm);
      out.mi_mp_dbm = std::min(out.mi_mp_dbm, rec.last_max_p_dbm);
    }
  }

  out.overall_fault_per_m = overall_fault(fails);
  out.success_pct = success_percentage(out.overall_fault_per_m, out.max_d_m, out.min_d_m);

  // Close the window.
  std::erase_if(records_, [](const auto& kv) { return kv.second.beacons_received() == 0; });
  for (auto& [elp, rec] : records_) rec.seq_window.clear();

  return out;
}

}  // namespace bpc
