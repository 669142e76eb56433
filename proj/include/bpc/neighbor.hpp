// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>

#include "bpc/beacon.hpp"

namespace bpc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance_m(Vec2 a, Vec2 b) noexcept;

/// Per-neighbor state: the sequence numbers heard in the current one-second
/// window, the distance/loss columns recomputed at every window close, and
/// the power fields from the neighbor's most recent beacon.
struct NeighborRecord {
  Elp elp{};
  std::set<std::uint16_t> seq_window;
  std::uint16_t interval_ms = 100;  // as declared by the neighbor
  double d_m = 0.0;                 // distance at last reception, floored at 1 cm
  double p_pct = 0.0;               // reception percentage for the last closed window
  double f_per_m = 0.0;             // beacons lost per meter
  double proj_pct = 0.0;            // projected reception at d + 1 m
  double last_max_p_dbm = 0.0;
  double last_min_p_dbm = 0.0;
  double last_pow_u_dbm = 0.0;

  int beacons_received() const { return static_cast<int>(seq_window.size()); }
};

/// Once-per-second snapshot of the channel as seen through the neighbor
/// table. Powers labelled *bp come from the neighbors' used-power fields,
/// ma_mp/mi_mp from their advertised-maximum fields.
struct ChannelAssessment {
  double overall_fault_per_m = 0.0;  // mean beacons lost per meter across neighbors
  double success_pct = 0.0;          // channel success percentage, clamped to [0, 100]
  int neighbor_count = 0;
  double max_d_m = 0.0;
  double min_d_m = 0.0;
  double max_bp_dbm = 0.0;
  double min_bp_dbm = 0.0;
  double ma_mp_dbm = 0.0;
  double mi_mp_dbm = 0.0;
  double d_max_sender_m = 0.0;  // distance to the strongest observed sender
  std::uint64_t window_end_ms = 0;
};

/// received/expected as a percentage. Throws Error(Errc::window_overflow)
/// when received exceeds expected, which signals a window accounting bug.
double reception_percentage(int received, int expected);

/// Beacons lost per meter of separation: (100 - p) / d.
/// Throws Error(Errc::degenerate_distance) when d is not strictly positive.
double fail_rate(double p_pct, double d_m);

/// Reception forecast one meter further out: p - f, floored at zero.
double projected_reception(double p_pct, double f_per_m) noexcept;

/// Mean fail rate across neighbors. Throws Error(Errc::no_neighbors) on an
/// empty input.
double overall_fault(std::span<const double> fail_rates_per_m);

/// Channel success percentage: 100 - ((max_d + min_d) / 2) * F, clamped to
/// [0, 100].
double success_percentage(double overall_fault_per_m, double max_d_m, double min_d_m);

/// One vehicle's view of its neighborhood. Feed every decoded beacon through
/// record_beacon and close the window once per second with assess().
///
/// Not thread-safe; each instance belongs to exactly one vehicle.
class NeighborTable {
 public:
  /// Registers a reception: inserts the sequence number into the neighbor's
  /// window (duplicates are idempotent), refreshes the distance from own_pos
  /// to the position claimed in the beacon, and overwrites the stored power
  /// fields. Creates the record when the sender is unknown.
  void record_beacon(const Beacon& b, Vec2 own_pos, std::uint64_t now_ms);

  /// Closes the current window: recomputes the per-neighbor loss columns,
  /// folds them into a ChannelAssessment, then resets all sequence windows
  /// and drops neighbors that stayed silent for the whole window.
  ///
  /// Neighbors that fell silent in this window still contribute their last
  /// known distance and powers once before being dropped. Returns nullopt
  /// when nothing was heard from anyone (the caller keeps its previous
  /// power), in which case the table is emptied.
  std::optional<ChannelAssessment> assess(std::uint64_t now_ms);

  /// Discards the sequence windows without producing an assessment. Used for
  /// a partial startup window whose counts would not be comparable to a full
  /// one-second window.
  void reset_windows();

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::map<Elp, NeighborRecord>& records() const { return records_; }

 private:
  std::map<Elp, NeighborRecord> records_;
};

}  // namespace bpc
