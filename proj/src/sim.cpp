// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/sim.hpp"

#include <cmath>
#include <cstdio>

#include "bpc/errors.hpp"

namespace bpc {

namespace {

// Hand-rolled generator so that logs are reproducible across standard
// library implementations; std distributions make no such promise.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }  // [0, 1)
};

constexpr double kSpeedJitterFrac = 0.1;
constexpr double kLaneWidthM = 3.5;

// Edge loss: receptions are clean out to half the sender's radius, then the
// erasure weight ramps linearly to kEdgeLossMax at the disc boundary.
constexpr double kEdgeLossStartFrac = 0.5;
constexpr double kEdgeLossMax = 0.9;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic per-(pair, beacon) erasure draw in [0, 1).
double erasure_unit(std::uint64_t seed, NodeId sender, NodeId receiver, std::uint16_t seq) {
  std::uint64_t h = seed;
  h = mix64(h ^ (0x9E3779B97F4A7C15ull + sender));
  h = mix64(h ^ (0xC2B2AE3D27D4EB4Full * (receiver + 1)));
  h = mix64(h ^ (0x165667B19E3779F9ull * (seq + 1)));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Elp make_vehicle_elp(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "V%07d", index);
  return elp_from_string(buf);
}

double wrap_position(double x, double road_length) {
  double w = std::fmod(x, road_length);
  if (w < 0.0) w += road_length;
  return w;
}

std::string join_lines(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

}  // namespace

const char* protocol_name(Protocol p) noexcept {
  return p == Protocol::bpc ? "bpc" : "fixed";
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errs;
  if (s.vehicle_count < 1) errs.push_back("vehicles must be >= 1");
  if (!(s.road_length_m > 0.0) || s.road_length_m > 1e6) {
    errs.push_back("road_length_m must be in (0, 1000000]");
  }
  if (s.lanes < 1) errs.push_back("lanes must be >= 1");
  if (!(s.spacing_m > 0.0)) errs.push_back("spacing_m must be > 0");
  if (s.vehicle_count >= 1 && s.road_length_m > 0.0 &&
      (s.vehicle_count - 1) * s.spacing_m > s.road_length_m) {
    errs.push_back("vehicles do not fit on the road at the given spacing");
  }
  if (!(s.speed_mps >= 0.0) || s.speed_mps > 300.0) {
    errs.push_back("speed_mps must be in [0, 300]");
  }
  if (s.duration_s < 2) errs.push_back("duration_s must be > 1");
  if (s.beacon_interval_ms < 1 || s.beacon_interval_ms > 1000) {
    errs.push_back("beacon_interval_ms must be in [1, 1000]");
  } else if (1000 % s.beacon_interval_ms != 0) {
    // Keeps the per-window expected count exact for the one-second timers.
    errs.push_back("beacon_interval_ms must divide 1000");
  }
  if (s.slot_ms < 1) {
    errs.push_back("slot_ms must be >= 1");
  } else {
    if (s.beacon_interval_ms % s.slot_ms != 0) {
      errs.push_back("beacon_interval_ms must be divisible by slot_ms");
    }
    if (1000 % s.slot_ms != 0) errs.push_back("slot_ms must divide 1000");
  }
  if (!(s.path_loss_exponent > 1.0)) errs.push_back("path_loss_exponent must be > 1");
  if (s.congestion_gate_pct < 0.0 || s.congestion_gate_pct > 100.0) {
    errs.push_back("congestion_gate_pct must be in [0, 100]");
  }
  if (!(s.max_power_dbm > 0.0) || s.max_power_dbm > kMaxPowerDbm) {
    errs.push_back("max_power_dbm must be in (0, 33]");
  }
  if (s.initial_power_jitter_dbm < 0.0 || s.initial_power_jitter_dbm > s.max_power_dbm) {
    errs.push_back("initial_power_jitter_dbm must be in [0, max_power_dbm]");
  }
  return errs;
}

Simulation::Simulation(const Scenario& s) : scenario_(s) {
  const auto errs = validate_scenario(s);
  if (!errs.empty()) {
    throw Error(Errc::bad_scenario, "invalid scenario: " + join_lines(errs));
  }

  cfg_.max_power_dbm = s.max_power_dbm;
  cfg_.initial_power_dbm = s.max_power_dbm;
  cfg_.congestion_gate_pct = s.congestion_gate_pct;
  model_.path_loss_exponent = s.path_loss_exponent;

  SplitMix64 rng(s.seed);
  vehicles_.resize(static_cast<std::size_t>(s.vehicle_count));
  const int slots_per_interval = s.beacon_interval_ms / s.slot_ms;
  for (int i = 0; i < s.vehicle_count; ++i) {
    VehicleState& v = vehicles_[static_cast<std::size_t>(i)];
    v.elp = make_vehicle_elp(i);
    v.pos = Vec2{wrap_position(i * s.spacing_m, s.road_length_m),
                 kLaneWidthM * static_cast<double>(i % s.lanes)};
    v.dir_deg = 0.0;
    v.protocol = s.protocol;

    // One draw each for phase, speed and starting power, in a fixed order,
    // so both protocol arms of a comparison share the same placement.
    const std::uint64_t phase_draw = rng.next();
    const double speed_draw = rng.unit();
    const double power_draw = rng.unit();

    v.phase_ms = static_cast<std::uint32_t>(phase_draw % static_cast<std::uint64_t>(
                                                             slots_per_interval)) *
                 static_cast<std::uint32_t>(s.slot_ms);
    v.speed_mps = s.speed_mps * (1.0 - kSpeedJitterFrac + 2.0 * kSpeedJitterFrac * speed_draw);

    if (v.protocol == Protocol::fixed) {
      v.power = fixed_power_baseline(cfg_);
    } else {
      const double start_power = cfg_.initial_power_dbm - s.initial_power_jitter_dbm * power_draw;
      v.power = initial_decision(start_power);
    }
  }

  receiver_poses_.resize(vehicles_.size());
  sender_slot_index_.assign(vehicles_.size(), -1);
  busy_scratch_.assign(vehicles_.size(), 0);
}

void Simulation::step() {
  const std::uint64_t t = now_ms_;
  const auto interval = static_cast<std::uint64_t>(scenario_.beacon_interval_ms);

  // Per-vehicle one-second timers: close the window, decide the next power.
  for (VehicleState& v : vehicles_) {
    if (t > 0 && t % 1000 == v.phase_ms % 1000) {
      if (t < 1000) {
        // Startup sliver [0, phase): too short to grade anyone, discard it
        // so every assessed window spans exactly one second.
        v.table.reset_windows();
        continue;
      }
      const auto assessment = v.table.assess(t);
      if (assessment) {
        v.s_pct = assessment->success_pct;
        v.f_per_m = assessment->overall_fault_per_m;
        v.neighbor_count = assessment->neighbor_count;
      } else {
        v.s_pct = -1.0;
        v.f_per_m = -1.0;
        v.neighbor_count = 0;
      }
      if (v.protocol == Protocol::bpc) {
        v.power = decide_power(assessment, v.power, cfg_);
      }
    }
  }

  // Collect the beacons due this slot.
  slot_txs_.clear();
  slot_beacons_.clear();
  slot_ranges_.clear();
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    VehicleState& v = vehicles_[i];
    if (t % interval != v.phase_ms) continue;

    Beacon b;
    b.seq = v.next_seq;
    b.interval_ms = static_cast<std::uint16_t>(scenario_.beacon_interval_ms);
    b.timestamp_ms = static_cast<std::uint32_t>(t);
    b.elp = v.elp;
    b.pos_x_m = v.pos.x;
    b.pos_y_m = v.pos.y;
    b.speed_mps = v.speed_mps;
    b.dir_deg = v.dir_deg;
    b.max_p_dbm = v.power.advertise_max_p_dbm;
    b.min_p_dbm = v.power.advertise_min_p_dbm;
    b.pow_u_dbm = v.power.pow_u_dbm;
    v.next_seq = next_sequence(v.next_seq);

    // Every beacon goes through the wire format; receivers see the decoded
    // (fixed-point quantized) view, exactly as they would off the air.
    sender_slot_index_[i] = static_cast<int>(slot_txs_.size());
    slot_beacons_.push_back(decode_beacon(encode_beacon(b)));
    slot_txs_.push_back(Transmission{static_cast<NodeId>(i), v.pos, v.power.pow_u_dbm});
    slot_ranges_.push_back(range_for_power(v.power.pow_u_dbm, model_));
    v.sent += 1;
    totals_.sent += 1;
  }

  if (!slot_txs_.empty()) {
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      receiver_poses_[i] = ReceiverPose{static_cast<NodeId>(i), vehicles_[i].pos};
    }
    const auto outcomes = resolve_slot(slot_txs_, receiver_poses_, model_);

    std::fill(busy_scratch_.begin(), busy_scratch_.end(), 0);
    for (const Transmission& tx : slot_txs_) busy_scratch_[tx.sender] = 1;

    for (const PairOutcome& o : outcomes) {
      VehicleState& rx = vehicles_[o.receiver];
      switch (o.result) {
        case Delivery::delivered: {
          busy_scratch_[o.receiver] = 1;  // the energy arrived either way
          const auto tx_idx = static_cast<std::size_t>(sender_slot_index_[o.sender]);
          const double u =
              distance_m(slot_txs_[tx_idx].pos, rx.pos) / slot_ranges_[tx_idx];
          bool erased = false;
          if (u > kEdgeLossStartFrac) {
            const double loss =
                kEdgeLossMax * (u - kEdgeLossStartFrac) / (1.0 - kEdgeLossStartFrac);
            erased = erasure_unit(scenario_.seed, o.sender, o.receiver,
                                  slot_beacons_[tx_idx].seq) < loss;
          }
          if (erased) {
            totals_.faded += 1;
          } else {
            rx.table.record_beacon(slot_beacons_[tx_idx], rx.pos, t);
            rx.received += 1;
            totals_.delivered += 1;
          }
          break;
        }
        case Delivery::collided:
          rx.collided += 1;
          totals_.collided += 1;
          busy_scratch_[o.receiver] = 1;
          break;
        case Delivery::out_of_range:
          totals_.out_of_range += 1;
          break;
      }
    }
    for (std::size_t i = 0; i < vehicles_.size(); ++i) {
      vehicles_[i].busy_slots += busy_scratch_[i];
    }
    for (const Transmission& tx : slot_txs_) sender_slot_index_[tx.sender] = -1;
  }

  // Mobility: constant velocity along the road with wraparound.
  const double dt_s = scenario_.slot_ms / 1000.0;
  for (VehicleState& v : vehicles_) {
    v.pos.x = wrap_position(v.pos.x + v.speed_mps * dt_s, scenario_.road_length_m);
  }

  now_ms_ += static_cast<std::uint64_t>(scenario_.slot_ms);
  if (now_ms_ % 1000 == 0) emit_second_rows();
}

void Simulation::emit_second_rows() {
  const int t_s = static_cast<int>(now_ms_ / 1000);
  const double slots_per_second = 1000.0 / scenario_.slot_ms;
  for (VehicleState& v : vehicles_) {
    MetricsRow row;
    row.t_s = t_s;
    row.elp = v.elp;
    row.pow_u_dbm = v.power.pow_u_dbm;
    row.s_pct = v.s_pct;
    row.f_per_m = v.f_per_m;
    row.neighbors = v.neighbor_count;
    row.sent = v.sent;
    row.received = v.received;
    row.collided = v.collided;
    row.busy_ratio = v.busy_slots / slots_per_second;
    rows_.push_back(row);

    v.sent = 0;
    v.received = 0;
    v.collided = 0;
    v.busy_slots = 0;
    v.s_pct = -1.0;
    v.f_per_m = -1.0;
    v.neighbor_count = 0;
  }
}

MetricsLog Simulation::run() {
  const std::uint64_t end_ms = static_cast<std::uint64_t>(scenario_.duration_s) * 1000ull;
  while (now_ms_ < end_ms) step();

  MetricsLog log;
  log.scenario = scenario_;
  log.rows = std::move(rows_);
  log.totals = totals_;
  return log;
}

MetricsLog run_scenario(const Scenario& s) {
  Simulation sim(s);
  return sim.run();
}

}  // namespace bpc
