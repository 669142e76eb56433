// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/channel.hpp"

#include <cmath>
#include <string>

#include "bpc/errors.hpp"

namespace bpc {

double range_for_power(double power_dbm, const PathLossModel& model) {
  if (!std::isfinite(power_dbm) || power_dbm < 0.0 || power_dbm > kMaxPowerDbm) {
    throw Error(Errc::invalid_power,
                "transmit power must be in [0, 33] dBm, got " + std::to_string(power_dbm));
  }
  const double exponent = (power_dbm - model.ref_power_dbm) / (10.0 * model.path_loss_exponent);
  return model.ref_range_m * std::pow(10.0, exponent);
}

std::vector<PairOutcome> resolve_slot(std::span<const Transmission> transmissions,
                                      std::span<const ReceiverPose> receivers,
                                      const PathLossModel& model) {
  std::vector<double> ranges(transmissions.size());
  for (std::size_t i = 0; i < transmissions.size(); ++i) {
    ranges[i] = range_for_power(transmissions[i].power_dbm, model);
  }

  std::vector<PairOutcome> out;
  if (!receivers.empty() && !transmissions.empty()) {
    out.reserve(transmissions.size() * (receivers.size() - 1));
  }

  std::vector<char> covers(transmissions.size());
  for (const ReceiverPose& rx : receivers) {
    int covering = 0;
    for (std::size_t i = 0; i < transmissions.size(); ++i) {
      covers[i] = distance_m(transmissions[i].pos, rx.pos) < ranges[i] ? 1 : 0;
      covering += covers[i];
    }
    for (std::size_t i = 0; i < transmissions.size(); ++i) {
      if (transmissions[i].sender == rx.id) continue;
      Delivery result = Delivery::out_of_range;
      if (covers[i]) {
        result = covering == 1 ? Delivery::delivered : Delivery::collided;
      }
      out.push_back(PairOutcome{transmissions[i].sender, rx.id, result});
    }
  }
  return out;
}

double busy_ratio(std::span<const Slot> window, Vec2 pos, const PathLossModel& model) {
  if (window.empty()) {
    throw Error(Errc::empty_window, "busy ratio needs at least one slot");
  }
  std::size_t busy = 0;
  for (const Slot& slot : window) {
    for (const Transmission& tx : slot) {
      if (distance_m(tx.pos, pos) < range_for_power(tx.power_dbm, model)) {
        ++busy;
        break;
      }
    }
  }
  return static_cast<double>(busy) / static_cast<double>(window.size());
}

}  // namespace bpc
