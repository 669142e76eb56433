// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpc/channel.hpp"
#include "bpc/neighbor.hpp"
#include "bpc/power.hpp"

namespace bpc {

enum class Protocol { bpc, fixed };

const char* protocol_name(Protocol p) noexcept;

/// Complete description of one simulation run. Identical scenarios (seed
/// included) produce byte-identical metrics.
struct Scenario {
  double road_length_m = 1000.0;
  int lanes = 1;
  int vehicle_count = 0;
  double spacing_m = 10.0;
  double speed_mps = 25.0;  // fleet mean; per-vehicle speeds get a seeded +-10% spread
  int duration_s = 0;
  int beacon_interval_ms = 100;
  int slot_ms = 1;
  std::uint64_t seed = 1;
  Protocol protocol = Protocol::bpc;
  double path_loss_exponent = 2.5;
  double congestion_gate_pct = 0.0;
  double max_power_dbm = kMaxPowerDbm;
  /// Width of the seeded per-vehicle spread of starting powers, in dBm below
  /// max_power_dbm. 0 starts the whole fleet at the cap; the adaptive
  /// protocol needs some observed power diversity before it can move, so
  /// congested-fleet studies typically set a few dBm here.
  double initial_power_jitter_dbm = 0.0;

  bool operator==(const Scenario&) const = default;
};

/// All violations, one message each; empty means the scenario is runnable.
std::vector<std::string> validate_scenario(const Scenario& s);

/// One vehicle-second of output.
struct MetricsRow {
  int t_s = 0;  // 1-based second index
  Elp elp{};
  double pow_u_dbm = 0.0;
  double s_pct = -1.0;    // -1 when the vehicle had no assessment this second
  double f_per_m = -1.0;  // likewise
  int neighbors = 0;
  int sent = 0;
  int received = 0;
  int collided = 0;
  double busy_ratio = 0.0;
};

struct SlotTotals {
  long long sent = 0;
  long long delivered = 0;
  long long collided = 0;
  long long out_of_range = 0;
  long long faded = 0;  // in range and collision-free, erased by edge loss
};

struct MetricsLog {
  Scenario scenario;
  std::vector<MetricsRow> rows;  // vehicle-major within each second, seconds ascending
  SlotTotals totals;             // per-pair outcome totals across the whole run
};

struct VehicleState {
  Elp elp{};
  Vec2 pos;
  double speed_mps = 0.0;
  double dir_deg = 0.0;
  Protocol protocol = Protocol::bpc;
  PowerDecision power;
  NeighborTable table;
  std::uint16_t next_seq = 0;
  std::uint32_t phase_ms = 0;  // beacon and assessment phase, in [0, interval)

  // tallies for the wall-clock second in progress
  int sent = 0;
  int received = 0;
  int collided = 0;
  int busy_slots = 0;
  double s_pct = -1.0;
  double f_per_m = -1.0;
  int neighbor_count = 0;
};

/// Deterministic slotted simulation loop. Per slot: per-vehicle assessment
/// timers fire first (so a beacon due in the same slot already uses the new
/// power), then due beacons are resolved through the channel and delivered
/// into the receivers' neighbor tables, then vehicles move.
///
/// On top of the disc model the loop applies a deterministic edge loss:
/// a collision-free reception at distance d from a sender with radius r is
/// erased with a weight that ramps up linearly once d/r passes one half,
/// keyed on (seed, sender, receiver, sequence number) so the pattern rotates
/// beacon to beacon. Reception percentages therefore degrade with distance
/// instead of snapping from perfect to nothing at the disc boundary, which
/// is the loss texture the power controller's estimator is built around.
class Simulation {
 public:
  /// Throws Error(Errc::bad_scenario) listing every violation.
  explicit Simulation(const Scenario& s);

  void step();
  MetricsLog run();  // executes duration_s worth of slots from t = 0

  std::uint64_t now_ms() const { return now_ms_; }
  const std::vector<VehicleState>& vehicles() const { return vehicles_; }
  const PathLossModel& path_loss() const { return model_; }
  const PowerConfig& power_config() const { return cfg_; }

 private:
  void emit_second_rows();

  Scenario scenario_;
  PowerConfig cfg_;
  PathLossModel model_;
  std::vector<VehicleState> vehicles_;
  std::vector<MetricsRow> rows_;
  SlotTotals totals_;
  std::uint64_t now_ms_ = 0;

  // scratch buffers reused across slots
  std::vector<Transmission> slot_txs_;
  std::vector<Beacon> slot_beacons_;
  std::vector<double> slot_ranges_;
  std::vector<int> sender_slot_index_;
  std::vector<ReceiverPose> receiver_poses_;
  std::vector<char> busy_scratch_;
};

/// Convenience wrapper: construct, run, return the log.
MetricsLog run_scenario(const Scenario& s);

}  // namespace bpc
