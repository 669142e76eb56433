// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/beacon.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bpc/errors.hpp"

namespace bpc {

namespace {

constexpr double kDbmScale = 100.0;   // 0.01 dBm resolution
constexpr double kMeterScale = 100.0; // 1 cm resolution
constexpr double kSpeedScale = 100.0; // 0.01 m/s resolution
constexpr double kDegScale = 10.0;    // 0.1 degree resolution

void put_u16(std::vector<std::uint8_t>& out, std::size_t at, std::uint16_t v) {
  out[at] = static_cast<std::uint8_t>(v >> 8);
  out[at + 1] = static_cast<std::uint8_t>(v & 0xFF);
}

void put_u32(std::vector<std::uint8_t>& out, std::size_t at, std::uint32_t v) {
  out[at] = static_cast<std::uint8_t>(v >> 24);
  out[at + 1] = static_cast<std::uint8_t>((v >> 16) & 0xFF);
  out[at + 2] = static_cast<std::uint8_t>((v >> 8) & 0xFF);
  out[at + 3] = static_cast<std::uint8_t>(v & 0xFF);
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint16_t>((in[at] << 8) | in[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
  return (static_cast<std::uint32_t>(in[at]) << 24) |
         (static_cast<std::uint32_t>(in[at + 1]) << 16) |
         (static_cast<std::uint32_t>(in[at + 2]) << 8) |
         static_cast<std::uint32_t>(in[at + 3]);
}

[[noreturn]] void invalid(const char* field, const char* detail) {
  throw Error(Errc::invalid_field,
              std::string("invalid beacon field '") + field + "': " + detail);
}

[[noreturn]] void corrupt(const char* field) {
  throw Error(Errc::corrupt_beacon,
              std::string("corrupt beacon: field '") + field + "' out of range");
}

std::int64_t quantize(double value, double scale) {
  return std::llround(value * scale);
}

}  // namespace

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_field: return "invalid_field";
    case Errc::truncated: return "truncated";
    case Errc::corrupt_beacon: return "corrupt_beacon";
    case Errc::window_overflow: return "window_overflow";
    case Errc::degenerate_distance: return "degenerate_distance";
    case Errc::no_neighbors: return "no_neighbors";
    case Errc::inconsistent_assessment: return "inconsistent_assessment";
    case Errc::invalid_power: return "invalid_power";
    case Errc::empty_window: return "empty_window";
    case Errc::bad_scenario: return "bad_scenario";
    case Errc::io_error: return "io_error";
  }
  return "unknown";
}

Elp elp_from_string(std::string_view s) {
  Elp elp{};
  for (std::size_t i = 0; i < elp.size() && i < s.size(); ++i) {
    elp[i] = static_cast<std::uint8_t>(s[i]);
  }
  return elp;
}

std::string elp_to_string(const Elp& elp) {
  std::size_t len = elp.size();
  while (len > 0 && elp[len - 1] == 0) --len;
  bool printable = len > 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (elp[i] <= 0x20 || elp[i] >= 0x7F || elp[i] == ',') {
      printable = false;
      break;
    }
  }
  if (printable) {
    return std::string(reinterpret_cast<const char*>(elp.data()), len);
  }
  std::string hex;
  hex.reserve(16);
  char buf[3];
  for (std::uint8_t byte : elp) {
    std::snprintf(buf, sizeof buf, "%02x", byte);
    hex.append(buf, 2);
  }
  return hex;
}

std::vector<std::uint8_t> encode_beacon(const Beacon& b) {
  if (b.seq >= kSequenceModulus) invalid("seq", "must be in [0, 4095]");
  if (b.interval_ms == 0) invalid("interval_ms", "must be positive");

  if (!std::isfinite(b.pos_x_m)) invalid("pos_x_m", "must be finite");
  if (!std::isfinite(b.pos_y_m)) invalid("pos_y_m", "must be finite");
  const std::int64_t x_q = quantize(b.pos_x_m, kMeterScale);
  const std::int64_t y_q = quantize(b.pos_y_m, kMeterScale);
  constexpr std::int64_t kI32Min = std::numeric_limits<std::int32_t>::min();
  constexpr std::int64_t kI32Max = std::numeric_limits<std::int32_t>::max();
  if (x_q < kI32Min || x_q > kI32Max) invalid("pos_x_m", "out of representable range");
  if (y_q < kI32Min || y_q > kI32Max) invalid("pos_y_m", "out of representable range");

  if (!std::isfinite(b.speed_mps) || b.speed_mps < 0.0) {
    invalid("speed_mps", "must be finite and non-negative");
  }
  const std::int64_t speed_q = quantize(b.speed_mps, kSpeedScale);
  if (speed_q > 0xFFFF) invalid("speed_mps", "out of representable range");

  if (!std::isfinite(b.dir_deg) || b.dir_deg < 0.0 || b.dir_deg >= 360.0) {
    invalid("dir_deg", "must be in [0, 360)");
  }
  const std::int64_t dir_q = quantize(b.dir_deg, kDegScale) % 3600;

  auto check_power = [](double v, const char* field) {
    if (!std::isfinite(v) || v < 0.0 || v > kMaxPowerDbm) {
      invalid(field, "must be in [0, 33] dBm");
    }
  };
  check_power(b.max_p_dbm, "max_p_dbm");
  check_power(b.min_p_dbm, "min_p_dbm");
  check_power(b.pow_u_dbm, "pow_u_dbm");
  if (b.min_p_dbm > b.max_p_dbm) invalid("min_p_dbm", "exceeds max_p_dbm");

  std::vector<std::uint8_t> out(kBeaconWireSize, 0);
  put_u16(out, 0, b.seq);
  put_u16(out, 2, b.interval_ms);
  put_u32(out, 4, b.timestamp_ms);
  for (std::size_t i = 0; i < b.elp.size(); ++i) out[8 + i] = b.elp[i];
  put_u32(out, 16, static_cast<std::uint32_t>(static_cast<std::int32_t>(x_q)));
  put_u32(out, 20, static_cast<std::uint32_t>(static_cast<std::int32_t>(y_q)));
  put_u16(out, 24, static_cast<std::uint16_t>(speed_q));
  put_u16(out, 26, static_cast<std::uint16_t>(dir_q));
  put_u16(out, 28, static_cast<std::uint16_t>(quantize(b.max_p_dbm, kDbmScale)));
  put_u16(out, 30, static_cast<std::uint16_t>(quantize(b.min_p_dbm, kDbmScale)));
  put_u16(out, 32, static_cast<std::uint16_t>(quantize(b.pow_u_dbm, kDbmScale)));
  // bytes 34..47 reserved, already zero
  return out;
}

Beacon decode_beacon(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kBeaconWireSize) {
    throw Error(Errc::truncated, "beacon record must be exactly 48 bytes, got " +
                                     std::to_string(bytes.size()));
  }

  const std::uint16_t seq = get_u16(bytes, 0);
  if (seq & 0xF000) corrupt("seq");
  const std::uint16_t interval = get_u16(bytes, 2);
  if (interval == 0) corrupt("interval_ms");

  const std::uint16_t dir_q = get_u16(bytes, 26);
  if (dir_q >= 3600) corrupt("dir_deg");

  const std::uint16_t max_q = get_u16(bytes, 28);
  const std::uint16_t min_q = get_u16(bytes, 30);
  const std::uint16_t pow_q = get_u16(bytes, 32);
  constexpr std::uint16_t kMaxDbmQ = 3300;
  if (max_q > kMaxDbmQ) corrupt("max_p_dbm");
  if (min_q > kMaxDbmQ) corrupt("min_p_dbm");
  if (pow_q > kMaxDbmQ) corrupt("pow_u_dbm");
  if (min_q > max_q) corrupt("min_p_dbm");

  Beacon b;
  b.seq = seq;
  b.interval_ms = interval;
  b.timestamp_ms = get_u32(bytes, 4);
  for (std::size_t i = 0; i < b.elp.size(); ++i) b.elp[i] = bytes[8 + i];
  b.pos_x_m = static_cast<std::int32_t>(get_u32(bytes, 16)) / kMeterScale;
  b.pos_y_m = static_cast<std::int32_t>(get_u32(bytes, 20)) / kMeterScale;
  b.speed_mps = get_u16(bytes, 24) / kSpeedScale;
  b.dir_deg = dir_q / kDegScale;
  b.max_p_dbm = max_q / kDbmScale;
  b.min_p_dbm = min_q / kDbmScale;
  b.pow_u_dbm = pow_q / kDbmScale;
  return b;
}

std::uint16_t next_sequence(std::uint16_t s) noexcept {
  return static_cast<std::uint16_t>((s + 1) & (kSequenceModulus - 1));
}

}  // namespace bpc
