// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include "bpc/metrics_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "bpc/errors.hpp"

namespace bpc {

namespace {

constexpr double kConvergenceEpsDbm = 0.1;
constexpr int kConvergenceHoldS = 5;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return std::string(buf);
}

std::string fmt2(double v) { return fmt("%.2f", v); }
std::string fmt4(double v) { return fmt("%.4f", v); }

}  // namespace

SummaryStats summarize(const MetricsLog& log) {
  SummaryStats out;
  out.protocol = log.scenario.protocol;
  out.seed = log.scenario.seed;

  const long long heard = log.totals.delivered + log.totals.collided;
  out.mean_delivery =
      heard == 0 ? 1.0 : static_cast<double>(log.totals.delivered) / static_cast<double>(heard);

  if (!log.rows.empty()) {
    double busy_sum = 0.0;
    double pow_sum = 0.0;
    for (const MetricsRow& r : log.rows) {
      busy_sum += r.busy_ratio;
      pow_sum += r.pow_u_dbm;
    }
    out.mean_busy = busy_sum / static_cast<double>(log.rows.size());
    out.mean_pow_u = pow_sum / static_cast<double>(log.rows.size());
  }

  // Fleet-mean power per second, then the first window of stable deltas.
  const int vehicles = log.scenario.vehicle_count;
  const int seconds = vehicles > 0 ? static_cast<int>(log.rows.size()) / vehicles : 0;
  std::vector<double> fleet_mean(static_cast<std::size_t>(seconds), 0.0);
  for (const MetricsRow& r : log.rows) {
    if (r.t_s >= 1 && r.t_s <= seconds) {
      fleet_mean[static_cast<std::size_t>(r.t_s - 1)] += r.pow_u_dbm / vehicles;
    }
  }
  out.convergence_s = -1;
  for (int t = 1; t + kConvergenceHoldS <= seconds; ++t) {
    bool stable = true;
    for (int k = 0; k < kConvergenceHoldS; ++k) {
      const double delta = std::fabs(fleet_mean[static_cast<std::size_t>(t + k)] -
                                     fleet_mean[static_cast<std::size_t>(t + k - 1)]);
      if (delta >= kConvergenceEpsDbm) {
        stable = false;
        break;
      }
    }
    if (stable) {
      out.convergence_s = t;
      break;
    }
  }
  return out;
}

std::string persec_csv(const MetricsLog& log) {
  std::string out = "t_s,elp,pow_u_dbm,s_pct,f_per_m,neighbors,sent,received,collided,busy_ratio\n";
  for (const MetricsRow& r : log.rows) {
    out += std::to_string(r.t_s);
    out += ',';
    out += elp_to_string(r.elp);
    out += ',';
    out += fmt2(r.pow_u_dbm);
    out += ',';
    out += fmt2(r.s_pct);
    out += ',';
    out += fmt4(r.f_per_m);
    out += ',';
    out += std::to_string(r.neighbors);
    out += ',';
    out += std::to_string(r.sent);
    out += ',';
    out += std::to_string(r.received);
    out += ',';
    out += std::to_string(r.collided);
    out += ',';
    out += fmt4(r.busy_ratio);
    out += '\n';
  }
  return out;
}

std::string summary_csv(std::span<const SummaryStats> stats) {
  std::string out = "protocol,seed,mean_delivery,mean_busy,mean_pow_u,convergence_s\n";
  for (const SummaryStats& s : stats) {
    out += protocol_name(s.protocol);
    out += ',';
    out += std::to_string(s.seed);
    out += ',';
    out += fmt4(s.mean_delivery);
    out += ',';
    out += fmt4(s.mean_busy);
    out += ',';
    out += fmt2(s.mean_pow_u);
    out += ',';
    out += std::to_string(s.convergence_s);
    out += '\n';
  }
  return out;
}

std::string persec_filename(const Scenario& s) {
  return std::string("persec_") + protocol_name(s.protocol) + "_seed" + std::to_string(s.seed) +
         ".csv";
}

std::string summary_filename(const Scenario& s) {
  return std::string("summary_") + protocol_name(s.protocol) + "_seed" + std::to_string(s.seed) +
         ".csv";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_error, "cannot open for writing: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(Errc::io_error, "write failed: " + path.string());
  }
}

void write_metrics(const MetricsLog& log, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(Errc::io_error, "cannot create output directory: " + out_dir.string());
  }
  write_text_file(out_dir / persec_filename(log.scenario), persec_csv(log));
  const SummaryStats stats[] = {summarize(log)};
  write_text_file(out_dir / summary_filename(log.scenario), summary_csv(stats));
}

}  // namespace bpc
