# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The bpcsim Authors

import pytest

import bpcpy


def make_beacon():
    b = bpcpy.Beacon()
    b.seq = 15
    b.interval_ms = 100
    b.timestamp_ms = 900
    b.elp = b"A"
    b.pos_x_m = 13.0
    b.speed_mps = 16.5
    b.dir_deg = 90.0
    b.max_p_dbm = 28.0
    b.min_p_dbm = 24.0
    b.pow_u_dbm = 25.0
    return b


def test_codec_round_trip():
    b = make_beacon()
    wire = bpcpy.encode_beacon(b)
    assert isinstance(wire, bytes)
    assert len(wire) == 48
    back = bpcpy.decode_beacon(wire)
    assert back == b
    assert bpcpy.encode_beacon(back) == wire


def test_codec_rejects_truncation_and_bad_fields():
    wire = bpcpy.encode_beacon(make_beacon())
    with pytest.raises(bpcpy.Error):
        bpcpy.decode_beacon(wire[:-1])
    b = make_beacon()
    b.pow_u_dbm = 40.0
    with pytest.raises(bpcpy.Error):
        bpcpy.encode_beacon(b)


def test_sequence_wraps():
    assert bpcpy.next_sequence(15) == 16
    assert bpcpy.next_sequence(4095) == 0


def test_kernels_reproduce_the_reference_window():
    p = bpcpy.reception_percentage(8, 10)
    assert p == pytest.approx(80.0)
    f = bpcpy.fail_rate(p, 13.0)
    assert f == pytest.approx(1.538, abs=1e-3)
    assert bpcpy.projected_reception(p, f) == pytest.approx(78.46, abs=1e-2)

    fails = [20.0 / 13.0, 40.0 / 18.0, 60.0 / 23.0, 20.0 / 18.0, 40.0 / 15.0]
    f_mean = bpcpy.overall_fault(fails)
    assert f_mean == pytest.approx(2.027, abs=5e-3)
    # The hand-rounded fail column gives the 63.51% figure.
    s_tab = bpcpy.success_percentage(2.027, 23.0, 13.0)
    assert s_tab == pytest.approx(63.51, abs=2e-2)


def test_power_decision_matches_the_reference_values():
    a = bpcpy.ChannelAssessment()
    a.success_pct = 63.51
    a.max_bp_dbm = 29.0
    a.min_bp_dbm = 25.0
    a.ma_mp_dbm = 29.0
    a.mi_mp_dbm = 26.0
    a.max_d_m = 23.0
    a.min_d_m = 13.0
    a.d_max_sender_m = 23.0

    cfg = bpcpy.PowerConfig()
    d = bpcpy.congested_power(a, cfg, bpcpy.initial_decision(33.0))
    assert d.branch == bpcpy.PowerBranch.congested
    assert d.pow_u_dbm == pytest.approx(27.54, abs=1e-2)

    a.success_pct = 100.0
    a.d_max_sender_m = 150.0
    d = bpcpy.clear_channel_power(a, cfg)
    assert d.branch == bpcpy.PowerBranch.clear_mid
    assert d.pow_u_dbm == pytest.approx(31.0)


def test_neighbor_table_pipeline():
    table = bpcpy.NeighborTable()
    own = bpcpy.Vec2(0.0, 0.0)
    for seq in (0, 1, 2, 3, 4, 5, 6, 7):
        b = make_beacon()
        b.seq = seq
        table.record_beacon(b, own, 900)
    a = table.assess(1000)
    assert a is not None
    assert a.neighbor_count == 1
    assert a.overall_fault_per_m == pytest.approx((100.0 - 80.0) / 13.0)


def test_range_calibration():
    model = bpcpy.PathLossModel()
    assert bpcpy.range_for_power(33.0, model) == pytest.approx(300.0)
    assert bpcpy.range_for_power(23.0, model) == pytest.approx(119.43, abs=1e-2)
    with pytest.raises(bpcpy.Error):
        bpcpy.range_for_power(34.0, model)


def test_scenario_parse_and_deterministic_run():
    scenario = bpcpy.parse_scenario(
        "vehicles = 6\n"
        "duration_s = 4\n"
        "road_length_m = 300\n"
        "spacing_m = 20\n"
        "speed_mps = 15\n"
        "seed = 9\n"
        "initial_power_jitter_dbm = 8\n"
    )
    log1 = bpcpy.run_scenario(scenario)
    log2 = bpcpy.run_scenario(scenario)
    assert bpcpy.persec_csv(log1) == bpcpy.persec_csv(log2)
    assert len(log1.rows) == 6 * 4

    stats = bpcpy.summarize(log1)
    assert 0.0 <= stats.mean_delivery <= 1.0
    assert 0.0 <= stats.mean_busy <= 1.0

    with pytest.raises(bpcpy.Error):
        bpcpy.parse_scenario("vehicles = 0\n")
