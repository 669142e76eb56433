// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <stdexcept>
#include <string>

namespace bpc {

enum class Errc {
  invalid_field,
  truncated,
  corrupt_beacon,
  window_overflow,
  degenerate_distance,
  no_neighbors,
  inconsistent_assessment,
  invalid_power,
  empty_window,
  bad_scenario,
  io_error,
};

const char* errc_name(Errc c) noexcept;

/// Every failure the library reports carries an Errc so callers can branch
/// on the condition instead of matching message text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bpc
