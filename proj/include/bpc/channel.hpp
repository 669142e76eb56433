// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bpc/neighbor.hpp"

namespace bpc {

/// Log-distance path loss collapsed to a deterministic disc: a transmission
/// at ref_power_dbm reaches exactly ref_range_m, and every power maps to one
/// radius. No fading, no capture.
struct PathLossModel {
  double ref_power_dbm = kMaxPowerDbm;
  double ref_range_m = 300.0;
  double path_loss_exponent = 2.5;  // > 1
};

/// Radius covered by a transmission:
///   ref_range * 10^((p - ref_power) / (10 * exponent))
/// Strictly increasing in p. Throws Error(Errc::invalid_power) for powers
/// outside [0, 33] dBm.
double range_for_power(double power_dbm, const PathLossModel& model);

using NodeId = std::uint32_t;

struct Transmission {
  NodeId sender = 0;
  Vec2 pos;
  double power_dbm = 0.0;
};

struct ReceiverPose {
  NodeId id = 0;
  Vec2 pos;
};

enum class Delivery { delivered, out_of_range, collided };

struct PairOutcome {
  NodeId sender = 0;
  NodeId receiver = 0;
  Delivery result = Delivery::out_of_range;
};

/// Resolves one slot of the broadcast medium. A receiver is covered by a
/// transmission when its distance to the sender is strictly below the
/// sender's radius. Exactly one covering transmission delivers; two or more
/// destroy each other at that receiver. A node transmitting in the slot
/// cannot receive in it: its own transmission counts toward the covering set
/// at its position. Pairs where sender == receiver are never reported.
std::vector<PairOutcome> resolve_slot(std::span<const Transmission> transmissions,
                                      std::span<const ReceiverPose> receivers,
                                      const PathLossModel& model);

using Slot = std::vector<Transmission>;

/// Fraction of slots in the window during which at least one transmission
/// covered `pos`. Throws Error(Errc::empty_window) on an empty window.
double busy_ratio(std::span<const Slot> window, Vec2 pos, const PathLossModel& model);

}  // namespace bpc
