// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpc {

/// Vehicle identity carried in every beacon (electronic license plate).
/// Opaque 8-byte value; no certificate semantics.
using Elp = std::array<std::uint8_t, 8>;

/// Builds an Elp from up to 8 characters, NUL-padded on the right.
Elp elp_from_string(std::string_view s);

/// Printable form: the ASCII bytes with trailing NULs stripped, or lowercase
/// hex when the value is not cleanly printable.
std::string elp_to_string(const Elp& elp);

inline constexpr std::size_t kBeaconWireSize = 48;

/// 12-bit sequence space, as in the 802.11 sequence-control subfield.
inline constexpr std::uint16_t kSequenceModulus = 4096;

/// Regulatory transmit power cap for DSRC on-board units (dBm).
inline constexpr double kMaxPowerDbm = 33.0;

/// Periodic single-hop safety beacon with the piggybacked power fields.
///
/// The three power fields let receivers reason about the transmit powers in
/// use around them: max_p/min_p are the highest and lowest powers the sender
/// itself has observed from its neighbors, pow_u is the power this very
/// transmission was sent with.
struct Beacon {
  std::uint16_t seq = 0;            // [0, 4095]
  std::uint16_t interval_ms = 100;  // declared beaconing interval, > 0
  std::uint32_t timestamp_ms = 0;   // sender clock at transmission
  Elp elp{};
  double pos_x_m = 0.0;
  double pos_y_m = 0.0;
  double speed_mps = 0.0;  // >= 0
  double dir_deg = 0.0;    // [0, 360)
  double max_p_dbm = 0.0;  // [0, 33], >= min_p_dbm
  double min_p_dbm = 0.0;  // [0, 33]
  double pow_u_dbm = 0.0;  // [0, 33]

  bool operator==(const Beacon&) const = default;
};

/// Serializes to the fixed 48-byte big-endian record:
///
///   seq:2 | interval_ms:2 | timestamp_ms:4 | elp:8 |
///   pos_x:4 (signed, m x100) | pos_y:4 (signed, m x100) |
///   speed:2 (unsigned, m/s x100) | dir:2 (unsigned, deg x10) |
///   max_p:2 | min_p:2 | pow_u:2 (all unsigned, dBm x100) |
///   reserved:14 (zero)
///
/// Real-valued fields are carried as fixed-point integers so that a
/// round trip is exact at the stated resolutions. Throws Error
/// (Errc::invalid_field) naming the offending field when an invariant is
/// violated or a value does not fit its fixed-point width.
std::vector<std::uint8_t> encode_beacon(const Beacon& b);

/// Inverse of encode_beacon on its image. Throws Error(Errc::truncated) if
/// the input is not exactly 48 bytes and Error(Errc::corrupt_beacon) when
/// decoded fields violate beacon invariants.
Beacon decode_beacon(std::span<const std::uint8_t> bytes);

/// (s + 1) mod 4096.
std::uint16_t next_sequence(std::uint16_t s) noexcept;

}  // namespace bpc
