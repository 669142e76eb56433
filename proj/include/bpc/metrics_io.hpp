// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "bpc/sim.hpp"

namespace bpc {

/// Run-level aggregates for one (protocol, seed) arm.
struct SummaryStats {
  Protocol protocol = Protocol::bpc;
  std::uint64_t seed = 0;
  /// delivered / (delivered + collided) over the whole run; 1.0 when nothing
  /// was ever in reach of a receiver. Out-of-range pairs are not losses: the
  /// ratio isolates what the MAC collisions destroyed.
  double mean_delivery = 1.0;
  double mean_busy = 0.0;
  double mean_pow_u = 0.0;
  /// First second T such that the fleet-mean power moves by less than
  /// 0.1 dBm between consecutive seconds for the 5 seconds starting at T;
  /// -1 when the run never settles.
  int convergence_s = -1;
};

SummaryStats summarize(const MetricsLog& log);

/// Per-second CSV, header:
///   t_s,elp,pow_u_dbm,s_pct,f_per_m,neighbors,sent,received,collided,busy_ratio
/// dBm and percentage columns carry 2 decimals, ratios 4; formatting is
/// locale-independent, so identical logs give identical bytes.
std::string persec_csv(const MetricsLog& log);

/// Summary CSV, header:
///   protocol,seed,mean_delivery,mean_busy,mean_pow_u,convergence_s
std::string summary_csv(std::span<const SummaryStats> stats);

std::string persec_filename(const Scenario& s);
std::string summary_filename(const Scenario& s);

/// Writes persec_filename(s) and summary_filename(s) into out_dir, creating
/// it if needed. Throws Error(Errc::io_error) when a file cannot be written.
void write_metrics(const MetricsLog& log, const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace bpc
