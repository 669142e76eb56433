// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bpcsim Authors

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bpc/channel.hpp"
#include "bpc/errors.hpp"
#include "bpc/golden.hpp"
#include "bpc/metrics_io.hpp"
#include "bpc/neighbor.hpp"
#include "bpc/power.hpp"
#include "bpc/scenario_io.hpp"
#include "bpc/sim.hpp"

namespace py = pybind11;

namespace {

bpc::Elp elp_from_bytes(const py::bytes& raw) {
  const std::string s = raw;
  if (s.size() > 8) {
    throw bpc::Error(bpc::Errc::invalid_field, "elp must be at most 8 bytes");
  }
  return bpc::elp_from_string(s);
}

py::bytes elp_to_bytes(const bpc::Elp& elp) {
  return py::bytes(reinterpret_cast<const char*>(elp.data()), elp.size());
}

}  // namespace

PYBIND11_MODULE(bpcpy, m) {
  m.doc() = "Adaptive beacon power control: protocol kernels, channel model and the "
            "deterministic beaconing simulator";

  py::register_exception<bpc::Error>(m, "Error");

  py::class_<bpc::Beacon>(m, "Beacon")
      .def(py::init<>())
      .def_readwrite("seq", &bpc::Beacon::seq)
      .def_readwrite("interval_ms", &bpc::Beacon::interval_ms)
      .def_readwrite("timestamp_ms", &bpc::Beacon::timestamp_ms)
      .def_property(
          "elp", [](const bpc::Beacon& b) { return elp_to_bytes(b.elp); },
          [](bpc::Beacon& b, const py::bytes& raw) { b.elp = elp_from_bytes(raw); })
      .def_readwrite("pos_x_m", &bpc::Beacon::pos_x_m)
      .def_readwrite("pos_y_m", &bpc::Beacon::pos_y_m)
      .def_readwrite("speed_mps", &bpc::Beacon::speed_mps)
      .def_readwrite("dir_deg", &bpc::Beacon::dir_deg)
      .def_readwrite("max_p_dbm", &bpc::Beacon::max_p_dbm)
      .def_readwrite("min_p_dbm", &bpc::Beacon::min_p_dbm)
      .def_readwrite("pow_u_dbm", &bpc::Beacon::pow_u_dbm)
      .def("__eq__", [](const bpc::Beacon& a, const bpc::Beacon& b) { return a == b; });

  m.def("encode_beacon", [](const bpc::Beacon& b) {
    const auto bytes = bpc::encode_beacon(b);
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("decode_beacon", [](const py::bytes& raw) {
    const std::string s = raw;
    return bpc::decode_beacon(
        std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  });
  m.def("next_sequence", &bpc::next_sequence);

  py::class_<bpc::Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return bpc::Vec2{x, y}; }))
      .def_readwrite("x", &bpc::Vec2::x)
      .def_readwrite("y", &bpc::Vec2::y);

  py::class_<bpc::ChannelAssessment>(m, "ChannelAssessment")
      .def(py::init<>())
      .def_readwrite("overall_fault_per_m", &bpc::ChannelAssessment::overall_fault_per_m)
      .def_readwrite("success_pct", &bpc::ChannelAssessment::success_pct)
      .def_readwrite("neighbor_count", &bpc::ChannelAssessment::neighbor_count)
      .def_readwrite("max_d_m", &bpc::ChannelAssessment::max_d_m)
      .def_readwrite("min_d_m", &bpc::ChannelAssessment::min_d_m)
      .def_readwrite("max_bp_dbm", &bpc::ChannelAssessment::max_bp_dbm)
      .def_readwrite("min_bp_dbm", &bpc::ChannelAssessment::min_bp_dbm)
      .def_readwrite("ma_mp_dbm", &bpc::ChannelAssessment::ma_mp_dbm)
      .def_readwrite("mi_mp_dbm", &bpc::ChannelAssessment::mi_mp_dbm)
      .def_readwrite("d_max_sender_m", &bpc::ChannelAssessment::d_max_sender_m)
      .def_readwrite("window_end_ms", &bpc::ChannelAssessment::window_end_ms);

  m.def("reception_percentage", &bpc::reception_percentage);
  m.def("fail_rate", &bpc::fail_rate);
  m.def("projected_reception", &bpc::projected_reception);
  m.def("overall_fault", [](const std::vector<double>& fails) {
    return bpc::overall_fault(std::span<const double>(fails.data(), fails.size()));
  });
  m.def("success_percentage", &bpc::success_percentage);

  py::class_<bpc::NeighborTable>(m, "NeighborTable")
      .def(py::init<>())
      .def("record_beacon", &bpc::NeighborTable::record_beacon)
      .def("assess", &bpc::NeighborTable::assess)
      .def("__len__", &bpc::NeighborTable::size);

  py::enum_<bpc::PowerBranch>(m, "PowerBranch")
      .value("congested", bpc::PowerBranch::congested)
      .value("clear_far", bpc::PowerBranch::clear_far)
      .value("clear_mid", bpc::PowerBranch::clear_mid)
      .value("clear_near", bpc::PowerBranch::clear_near)
      .value("capped", bpc::PowerBranch::capped)
      .value("suppressed", bpc::PowerBranch::suppressed)
      .value("hold", bpc::PowerBranch::hold);

  py::class_<bpc::PowerDecision>(m, "PowerDecision")
      .def(py::init<>())
      .def_readwrite("pow_u_dbm", &bpc::PowerDecision::pow_u_dbm)
      .def_readwrite("branch", &bpc::PowerDecision::branch)
      .def_readwrite("advertise_max_p_dbm", &bpc::PowerDecision::advertise_max_p_dbm)
      .def_readwrite("advertise_min_p_dbm", &bpc::PowerDecision::advertise_min_p_dbm)
      .def_readwrite("pd_dbm", &bpc::PowerDecision::pd_dbm);

  py::class_<bpc::PowerConfig>(m, "PowerConfig")
      .def(py::init<>())
      .def_readwrite("max_power_dbm", &bpc::PowerConfig::max_power_dbm)
      .def_readwrite("congestion_gate_pct", &bpc::PowerConfig::congestion_gate_pct)
      .def_readwrite("far_threshold_m", &bpc::PowerConfig::far_threshold_m)
      .def_readwrite("mid_threshold_m", &bpc::PowerConfig::mid_threshold_m)
      .def_readwrite("initial_power_dbm", &bpc::PowerConfig::initial_power_dbm);

  m.def("power_difference", &bpc::power_difference);
  m.def("initial_decision", &bpc::initial_decision);
  m.def("congested_power", &bpc::congested_power);
  m.def("clear_channel_power", &bpc::clear_channel_power);
  m.def("decide_power", &bpc::decide_power);
  m.def("fixed_power_baseline", &bpc::fixed_power_baseline);
  m.def("branch_name", &bpc::branch_name);

  py::class_<bpc::PathLossModel>(m, "PathLossModel")
      .def(py::init<>())
      .def_readwrite("ref_power_dbm", &bpc::PathLossModel::ref_power_dbm)
      .def_readwrite("ref_range_m", &bpc::PathLossModel::ref_range_m)
      .def_readwrite("path_loss_exponent", &bpc::PathLossModel::path_loss_exponent);

  m.def("range_for_power", &bpc::range_for_power);

  py::enum_<bpc::Protocol>(m, "Protocol")
      .value("bpc", bpc::Protocol::bpc)
      .value("fixed", bpc::Protocol::fixed);

  py::class_<bpc::Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("road_length_m", &bpc::Scenario::road_length_m)
      .def_readwrite("lanes", &bpc::Scenario::lanes)
      .def_readwrite("vehicle_count", &bpc::Scenario::vehicle_count)
      .def_readwrite("spacing_m", &bpc::Scenario::spacing_m)
      .def_readwrite("speed_mps", &bpc::Scenario::speed_mps)
      .def_readwrite("duration_s", &bpc::Scenario::duration_s)
      .def_readwrite("beacon_interval_ms", &bpc::Scenario::beacon_interval_ms)
      .def_readwrite("slot_ms", &bpc::Scenario::slot_ms)
      .def_readwrite("seed", &bpc::Scenario::seed)
      .def_readwrite("protocol", &bpc::Scenario::protocol)
      .def_readwrite("path_loss_exponent", &bpc::Scenario::path_loss_exponent)
      .def_readwrite("congestion_gate_pct", &bpc::Scenario::congestion_gate_pct)
      .def_readwrite("max_power_dbm", &bpc::Scenario::max_power_dbm)
      .def_readwrite("initial_power_jitter_dbm", &bpc::Scenario::initial_power_jitter_dbm);

  m.def("parse_scenario", [](const std::string& text) { return bpc::parse_scenario(text); });
  m.def("render_scenario", &bpc::render_scenario);
  m.def("validate_scenario", &bpc::validate_scenario);

  py::class_<bpc::MetricsRow>(m, "MetricsRow")
      .def_readonly("t_s", &bpc::MetricsRow::t_s)
      .def_property_readonly("elp",
                             [](const bpc::MetricsRow& r) { return bpc::elp_to_string(r.elp); })
      .def_readonly("pow_u_dbm", &bpc::MetricsRow::pow_u_dbm)
      .def_readonly("s_pct", &bpc::MetricsRow::s_pct)
      .def_readonly("f_per_m", &bpc::MetricsRow::f_per_m)
      .def_readonly("neighbors", &bpc::MetricsRow::neighbors)
      .def_readonly("sent", &bpc::MetricsRow::sent)
      .def_readonly("received", &bpc::MetricsRow::received)
      .def_readonly("collided", &bpc::MetricsRow::collided)
      .def_readonly("busy_ratio", &bpc::MetricsRow::busy_ratio);

  py::class_<bpc::SlotTotals>(m, "SlotTotals")
      .def_readonly("sent", &bpc::SlotTotals::sent)
      .def_readonly("delivered", &bpc::SlotTotals::delivered)
      .def_readonly("collided", &bpc::SlotTotals::collided)
      .def_readonly("out_of_range", &bpc::SlotTotals::out_of_range)
      .def_readonly("faded", &bpc::SlotTotals::faded);

  py::class_<bpc::MetricsLog>(m, "MetricsLog")
      .def_readonly("scenario", &bpc::MetricsLog::scenario)
      .def_readonly("rows", &bpc::MetricsLog::rows)
      .def_readonly("totals", &bpc::MetricsLog::totals);

  py::class_<bpc::SummaryStats>(m, "SummaryStats")
      .def_readonly("protocol", &bpc::SummaryStats::protocol)
      .def_readonly("seed", &bpc::SummaryStats::seed)
      .def_readonly("mean_delivery", &bpc::SummaryStats::mean_delivery)
      .def_readonly("mean_busy", &bpc::SummaryStats::mean_busy)
      .def_readonly("mean_pow_u", &bpc::SummaryStats::mean_pow_u)
      .def_readonly("convergence_s", &bpc::SummaryStats::convergence_s);

  m.def("run_scenario", &bpc::run_scenario,
        "Run the deterministic simulation loop for a scenario and return the metrics log");
  m.def("summarize", &bpc::summarize);
  m.def("persec_csv", &bpc::persec_csv);
  m.def("summary_csv", [](const std::vector<bpc::SummaryStats>& stats) {
    return bpc::summary_csv(std::span<const bpc::SummaryStats>(stats.data(), stats.size()));
  });
}
