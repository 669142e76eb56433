// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpc/errors.hpp"
#include "bpc/golden.hpp"
#include "bpc/metrics_io.hpp"
#include "bpc/scenario_io.hpp"
#include "bpc/sim.hpp"

namespace {

bpc::Scenario load_scenario(const std::string& path, std::optional<std::uint64_t> seed,
                            std::optional<std::string> protocol) {
  bpc::Scenario s = bpc::parse_scenario_file(path);
  if (seed) s.seed = *seed;
  if (protocol) {
    if (*protocol == "bpc") {
      s.protocol = bpc::Protocol::bpc;
    } else if (*protocol == "fixed") {
      s.protocol = bpc::Protocol::fixed;
    } else {
      throw bpc::Error(bpc::Errc::bad_scenario, "protocol must be 'bpc' or 'fixed'");
    }
  }
  return s;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed, std::optional<std::string> protocol) {
  const bpc::Scenario s = load_scenario(scenario_path, seed, protocol);
  const bpc::MetricsLog log = bpc::run_scenario(s);
  bpc::write_metrics(log, out_dir);
  const bpc::SummaryStats stats = bpc::summarize(log);
  std::printf("%s seed=%llu: delivery=%.4f busy=%.4f mean_power=%.2f dBm convergence=%d s\n",
              bpc::protocol_name(stats.protocol), static_cast<unsigned long long>(stats.seed),
              stats.mean_delivery, stats.mean_busy, stats.mean_pow_u, stats.convergence_s);
  std::printf("wrote %s and %s in %s\n", bpc::persec_filename(s).c_str(),
              bpc::summary_filename(s).c_str(), out_dir.c_str());
  return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir, int seeds,
                std::optional<std::uint64_t> seed_base) {
  bpc::Scenario base = bpc::parse_scenario_file(scenario_path);
  if (seed_base) base.seed = *seed_base;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw bpc::Error(bpc::Errc::io_error, "cannot create output directory: " + out_dir);
  }

  std::vector<bpc::SummaryStats> all;
  int lower_busy = 0;
  int delivery_at_least = 0;
  for (int k = 0; k < seeds; ++k) {
    bpc::Scenario s = base;
    s.seed = base.seed + static_cast<std::uint64_t>(k);

    s.protocol = bpc::Protocol::bpc;
    const bpc::MetricsLog bpc_log = bpc::run_scenario(s);
    bpc::write_metrics(bpc_log, out_dir);
    const bpc::SummaryStats bpc_stats = bpc::summarize(bpc_log);

    s.protocol = bpc::Protocol::fixed;
    const bpc::MetricsLog fixed_log = bpc::run_scenario(s);
    bpc::write_metrics(fixed_log, out_dir);
    const bpc::SummaryStats fixed_stats = bpc::summarize(fixed_log);

    all.push_back(bpc_stats);
    all.push_back(fixed_stats);
    if (bpc_stats.mean_busy < fixed_stats.mean_busy) ++lower_busy;
    if (bpc_stats.mean_delivery >= fixed_stats.mean_delivery) ++delivery_at_least;

    std::printf("seed %llu: busy bpc=%.4f fixed=%.4f | delivery bpc=%.4f fixed=%.4f | "
                "mean power bpc=%.2f fixed=%.2f | convergence bpc=%d s\n",
                static_cast<unsigned long long>(s.seed), bpc_stats.mean_busy,
                fixed_stats.mean_busy, bpc_stats.mean_delivery, fixed_stats.mean_delivery,
                bpc_stats.mean_pow_u, fixed_stats.mean_pow_u, bpc_stats.convergence_s);
  }

  bpc::write_text_file(std::filesystem::path(out_dir) / "compare_summary.csv",
                       bpc::summary_csv(all));
  std::printf("adaptive arm had lower busy ratio on %d/%d seeds and delivery >= fixed on %d/%d\n",
              lower_busy, seeds, delivery_at_least, seeds);
  std::printf("wrote compare_summary.csv in %s\n", out_dir.c_str());
  return 0;
}

int cmd_golden() {
  const bpc::GoldenTrace g = bpc::golden_trace();
  std::printf("five-neighbor reference trace\n");
  std::printf("  fail rates:");
  for (std::size_t i = 0; i < g.neighbor_names.size(); ++i) {
    std::printf(" %s=%.4f", g.neighbor_names[i].c_str(), g.fail_per_m[i]);
  }
  std::printf("  (lost beacons per meter)\n");
  std::printf("  F    = %.2f per m   [%.3f on the hand-rounded fail column]\n",
              g.assessment.overall_fault_per_m, g.tabulated_f);
  std::printf("  S    = %.2f %%       [%.2f %% at F = %.3f]\n", g.assessment.success_pct,
              g.tabulated_s, g.tabulated_f);
  std::printf("  MaxD = %.0f m  MinD = %.0f m  neighbors = %d\n", g.assessment.max_d_m,
              g.assessment.min_d_m, g.assessment.neighbor_count);
  std::printf("  MaxBP = %.0f dBm  MinBP = %.0f dBm  MaMP = %.0f dBm  MiMP = %.0f dBm\n",
              g.assessment.max_bp_dbm, g.assessment.min_bp_dbm, g.assessment.ma_mp_dbm,
              g.assessment.mi_mp_dbm);
  std::printf("  PD   = %.0f dBm\n", g.decision.pd_dbm);
  std::printf("  PowU = %.2f dBm (branch %s)   [%.2f at the hand-rounded F]\n",
              g.decision.pow_u_dbm, bpc::branch_name(g.decision.branch), g.tabulated_pow_u);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bpcsim: deterministic VANET beaconing simulator with adaptive beacon power control"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> protocol;
  int seeds = 1;

  CLI::App* run = app.add_subcommand("run", "simulate one protocol arm and write CSV metrics");
  run->add_option("scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--protocol", protocol, "override the protocol (bpc|fixed)")
      ->check(CLI::IsMember({"bpc", "fixed"}));

  CLI::App* compare =
      app.add_subcommand("compare", "run both protocol arms on identical seeds and join the summaries");
  compare->add_option("scenario", scenario_path, "scenario file")->required();
  compare->add_option("--out", out_dir, "output directory")->required();
  compare->add_option("--seeds", seeds, "number of consecutive seeds to sweep")
      ->check(CLI::PositiveNumber);
  compare->add_option("--seed", seed, "override the base seed");

  CLI::App* golden =
      app.add_subcommand("golden", "replay the hand-checkable reference trace and print its values");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, out_dir, seed, protocol);
    if (compare->parsed()) return cmd_compare(scenario_path, out_dir, seeds, seed);
    if (golden->parsed()) return cmd_golden();
  } catch (const bpc::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", bpc::errc_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
