// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bpc/errors.hpp"
#include "bpc/golden.hpp"
#include "bpc/power.hpp"
#include "test_support.hpp"

using namespace bpc;

namespace {

ChannelAssessment make_assessment(double s_pct, double max_bp, double min_bp, double ma_mp,
                                  double mi_mp, double d_max_sender) {
  ChannelAssessment a;
  a.success_pct = s_pct;
  a.max_bp_dbm = max_bp;
  a.min_bp_dbm = min_bp;
  a.ma_mp_dbm = ma_mp;
  a.mi_mp_dbm = mi_mp;
  a.max_d_m = 200.0;
  a.min_d_m = 10.0;
  a.d_max_sender_m = d_max_sender;
  a.neighbor_count = 5;
  return a;
}

}  // namespace

TEST_CASE("power difference is the observed span") {
  CHECK(power_difference(29.0, 25.0) == doctest::Approx(4.0));
  CHECK(power_difference(28.0, 28.0) == doctest::Approx(0.0));
  CHECK(power_difference(33.0, 0.0) == doctest::Approx(33.0));
  CHECK_THROWS_AS(power_difference(25.0, 29.0), Error);
}

TEST_CASE("congested adjustment lands inside the observed span") {
  const PowerConfig cfg;
  const auto a = make_assessment(63.51, 29.0, 25.0, 29.0, 26.0, 23.0);
  const PowerDecision d = congested_power(a, cfg, initial_decision(33.0));
  CHECK(d.branch == PowerBranch::congested);
  CHECK(d.pow_u_dbm == doctest::Approx(27.54).epsilon(0.0004));
  CHECK(d.pd_dbm == doctest::Approx(4.0));
  CHECK(d.advertise_max_p_dbm == doctest::Approx(29.0));
  CHECK(d.advertise_min_p_dbm == doctest::Approx(25.0));
}

TEST_CASE("the advertised-maximum gate holds the previous power when it fails") {
  const PowerConfig cfg;
  // Candidate 25 + 4 * 0.2 = 25.8 <= MiMP = 26, so the gate rejects it.
  const auto low = make_assessment(20.0, 29.0, 25.0, 29.0, 26.0, 23.0);
  const PowerDecision d = congested_power(low, cfg, initial_decision(31.0));
  CHECK(d.branch == PowerBranch::hold);
  CHECK(d.pow_u_dbm == doctest::Approx(31.0));

  // Degenerate span: candidate equals MinBP and the gate interval decides.
  const auto flat_pass = make_assessment(50.0, 28.0, 28.0, 29.0, 26.0, 23.0);
  CHECK(congested_power(flat_pass, cfg, initial_decision(31.0)).branch == PowerBranch::congested);
  const auto flat_fail = make_assessment(50.0, 28.0, 28.0, 28.0, 28.0, 23.0);
  CHECK(congested_power(flat_fail, cfg, initial_decision(31.0)).branch == PowerBranch::hold);
}

TEST_CASE("clear channel keys on the distance to the strongest sender") {
  const PowerConfig cfg;

  auto far = make_assessment(100.0, 29.0, 25.0, 29.0, 26.0, 250.0);
  PowerDecision d = clear_channel_power(far, cfg);
  CHECK(d.branch == PowerBranch::clear_far);
  CHECK(d.pow_u_dbm == doctest::Approx(29.0));

  auto mid = make_assessment(100.0, 29.0, 25.0, 29.0, 26.0, 150.0);
  d = clear_channel_power(mid, cfg);
  CHECK(d.branch == PowerBranch::clear_mid);
  CHECK(d.pow_u_dbm == doctest::Approx(31.0));

  auto near = make_assessment(100.0, 29.0, 25.0, 29.0, 26.0, 50.0);
  d = clear_channel_power(near, cfg);
  CHECK(d.branch == PowerBranch::clear_near);
  CHECK(d.pow_u_dbm == doctest::Approx(33.0));
}

TEST_CASE("clear-channel raises cap at the regulatory limit") {
  const PowerConfig cfg;

  auto near = make_assessment(100.0, 32.0, 28.0, 32.0, 29.0, 50.0);
  PowerDecision d = clear_channel_power(near, cfg);
  CHECK(d.branch == PowerBranch::capped);
  CHECK(d.pow_u_dbm == doctest::Approx(33.0));

  auto mid = make_assessment(100.0, 32.0, 28.0, 32.0, 29.0, 150.0);
  d = clear_channel_power(mid, cfg);
  CHECK(d.branch == PowerBranch::capped);
  CHECK(d.pow_u_dbm == doctest::Approx(33.0));

  // 32.5 fits: not capped.
  auto mid_ok = make_assessment(100.0, 32.0, 31.0, 32.0, 31.5, 150.0);
  d = clear_channel_power(mid_ok, cfg);
  CHECK(d.branch == PowerBranch::clear_mid);
  CHECK(d.pow_u_dbm == doctest::Approx(32.5));
}

TEST_CASE("clear-channel output stays within [MaxBP, cap]") {
  const PowerConfig cfg;
  bpc_test::SplitMix64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const double min_bp = rng.grid01(0.0, 33.0);
    const double max_bp = rng.grid01(min_bp, 33.0);
    const double d_strongest = rng.unit() * 400.0;
    const auto a = make_assessment(100.0, max_bp, min_bp, max_bp, min_bp, d_strongest);
    const PowerDecision d = clear_channel_power(a, cfg);
    CHECK(d.pow_u_dbm >= max_bp - 1e-12);
    CHECK(d.pow_u_dbm <= 33.0 + 1e-12);
  }
}

TEST_CASE("decide_power dispatches on channel state") {
  const PowerConfig cfg;
  const PowerDecision first = initial_decision(cfg.initial_power_dbm);

  // No assessment: hold the initial power.
  PowerDecision d = decide_power(std::nullopt, first, cfg);
  CHECK(d.branch == PowerBranch::hold);
  CHECK(d.pow_u_dbm == doctest::Approx(33.0));

  // The congested reference values.
  const auto congested = make_assessment(63.51, 29.0, 25.0, 29.0, 26.0, 23.0);
  d = decide_power(congested, first, cfg);
  CHECK(d.branch == PowerBranch::congested);
  CHECK(d.pow_u_dbm == doctest::Approx(27.54).epsilon(0.0004));

  // Clear channel matches the dedicated rule.
  const auto clear = make_assessment(100.0, 29.0, 25.0, 29.0, 26.0, 150.0);
  d = decide_power(clear, first, cfg);
  const PowerDecision direct = clear_channel_power(clear, cfg);
  CHECK(d.branch == direct.branch);
  CHECK(d.pow_u_dbm == doctest::Approx(direct.pow_u_dbm));
}

TEST_CASE("the optional success gate holds mild congestion") {
  PowerConfig cfg;
  cfg.congestion_gate_pct = 50.0;
  const PowerDecision prev = initial_decision(30.0);

  // S above the gate: leave the whole decision alone, advertisement included.
  const auto mild = make_assessment(63.51, 29.0, 25.0, 29.0, 26.0, 23.0);
  PowerDecision d = decide_power(mild, prev, cfg);
  CHECK(d.branch == PowerBranch::hold);
  CHECK(d.pow_u_dbm == doctest::Approx(30.0));
  CHECK(d.advertise_max_p_dbm == doctest::Approx(30.0));

  // S below the gate: adjust as usual.
  const auto heavy = make_assessment(40.0, 29.0, 25.0, 29.0, 26.0, 23.0);
  d = decide_power(heavy, prev, cfg);
  CHECK(d.branch == PowerBranch::congested);
  CHECK(d.pow_u_dbm == doctest::Approx(25.0 + 4.0 * 0.40));
}

TEST_CASE("fixed baseline always returns the cap") {
  PowerConfig cfg;
  PowerDecision d = fixed_power_baseline(cfg);
  CHECK(d.pow_u_dbm == doctest::Approx(33.0));
  CHECK(d.branch == PowerBranch::hold);

  cfg.max_power_dbm = 20.0;
  d = fixed_power_baseline(cfg);
  CHECK(d.pow_u_dbm == doctest::Approx(20.0));

  const PowerDecision again = fixed_power_baseline(cfg);
  CHECK(again.pow_u_dbm == d.pow_u_dbm);
  CHECK(again.branch == d.branch);
}

TEST_CASE("decision kernel is deterministic and bounded over random assessments") {
  const PowerConfig cfg;
  bpc_test::SplitMix64 rng(0xD15EA5Eull);

  for (int i = 0; i < 1000; ++i) {
    const double min_bp = rng.grid01(0.0, 33.0);
    const double max_bp = rng.grid01(min_bp, 33.0);
    const double mi_mp = rng.grid01(0.0, 33.0);
    const double ma_mp = rng.grid01(mi_mp, 33.0);
    const double s = rng.unit() * 100.0;
    const double prev_pow = rng.grid01(0.0, 33.0);
    const auto a = make_assessment(s, max_bp, min_bp, ma_mp, mi_mp, rng.unit() * 300.0);
    const PowerDecision prev = initial_decision(prev_pow);

    const PowerDecision d1 = decide_power(a, prev, cfg);
    const PowerDecision d2 = decide_power(a, prev, cfg);
    CHECK(d1.pow_u_dbm == d2.pow_u_dbm);
    CHECK(d1.branch == d2.branch);

    CHECK(d1.pow_u_dbm >= 0.0);
    CHECK(d1.pow_u_dbm <= 33.0);
    if (d1.branch == PowerBranch::congested) {
      CHECK(d1.pow_u_dbm >= min_bp - 1e-12);
      CHECK(d1.pow_u_dbm <= max_bp + 1e-12);
    }
  }
}

TEST_CASE("congested power is monotone in the success percentage") {
  const PowerConfig cfg;
  bpc_test::SplitMix64 rng(77);
  for (int i = 0; i < 300; ++i) {
    const double min_bp = rng.grid01(0.0, 30.0);
    const double max_bp = rng.grid01(min_bp, 33.0);
    const double s1 = rng.unit() * 99.0;
    const double s2 = s1 + rng.unit() * (99.0 - s1);
    // Keep the gate wide open so both candidates are adopted.
    const auto a1 = make_assessment(s1, max_bp, min_bp, 33.0, 0.0, 23.0);
    const auto a2 = make_assessment(s2, max_bp, min_bp, 33.0, 0.0, 23.0);
    const PowerDecision d1 = congested_power(a1, cfg, initial_decision(33.0));
    const PowerDecision d2 = congested_power(a2, cfg, initial_decision(33.0));
    if (d1.branch == PowerBranch::congested && d2.branch == PowerBranch::congested) {
      CHECK(d1.pow_u_dbm <= d2.pow_u_dbm + 1e-12);
    }
  }
}

TEST_CASE("the full reference decision comes out at 27.54 dBm") {
  const GoldenTrace g = golden_trace();
  CHECK(g.decision.branch == PowerBranch::congested);
  CHECK(g.decision.pd_dbm == doctest::Approx(4.0));
  CHECK(g.decision.pow_u_dbm == doctest::Approx(27.54).epsilon(0.0004));
  CHECK(g.tabulated_pow_u == doctest::Approx(27.54).epsilon(0.0004));
  CHECK(g.decision.advertise_max_p_dbm == doctest::Approx(29.0));
  CHECK(g.decision.advertise_min_p_dbm == doctest::Approx(25.0));
}
