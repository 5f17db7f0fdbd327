#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pglab/power.hpp"
#include "pglab/report.hpp"

using namespace pglab;

namespace {

struct Bench {
  Circuit c;
  DeviceParams p;
  TimingResult tr;
  PowerParams pp;
  Bench()
      : c(generate_multiplier4x4(default_cell_library())),
        p(default_device_params()),
        tr(critical_path(c, p)) {}
};

double cell_leak_sum(const Circuit& c) {
  double i = 0.0;
  for (const auto& g : c.gates) {
    const CellDef* cd = c.find_cell(g.cell);
    double scale = 1.0;
    if (g.geom_override)
      scale = (g.geom_override->w / cd->geom_n.w) * (cd->geom_n.l / g.geom_override->l);
    i += cd->i_leak_ref * scale;
  }
  return i;
}

}  // namespace

TEST_CASE("ungated standby leakage is the sum of cell leakages") {
  Bench b;
  GatingPlan none;
  CHECK(standby_leakage(b.c, none, b.p) == Catch::Approx(cell_leak_sum(b.c) * b.p.vdd)
                                               .epsilon(1e-14));
}

TEST_CASE("sleep transistor leakage is exactly linear in width") {
  Bench b;
  auto plan_with = [&](double w) {
    return conventional_gating(b.c, b.tr, {w}, b.p, 1.0);
  };
  GatingPlan p1 = plan_with(270e-9);
  GatingPlan p2 = plan_with(540e-9);
  GatingPlan none;
  double base = standby_leakage(b.c, none, b.p);
  // every gate is gated, so the whole figure is ST-attributed
  double st1 = standby_leakage(b.c, p1, b.p);
  double st2 = standby_leakage(b.c, p2, b.p);
  CHECK(st2 == Catch::Approx(2.0 * st1).epsilon(1e-12));
  CHECK(st1 < base);
}

TEST_CASE("gated standby leakage matches a per-device sum") {
  Bench b;
  GatingPlan conv =
      conventional_gating(b.c, b.tr, {135e-9, 270e-9, 400e-9, 540e-9, 700e-9}, b.p, 0.1);

  // independent accumulation: one off footer, no cell paths remain
  const SleepTransistor& st = conv.st_per_cluster.at(0);
  double expect =
      subthreshold_current(b.p, Geometry{st.geom.w, st.geom.l}, BiasPoint{0, 0, b.p.vdd}) *
      b.p.vdd;
  CHECK(standby_leakage(b.c, conv, b.p) == Catch::Approx(expect).epsilon(1e-12));
  CHECK(expect < standby_leakage(b.c, GatingPlan{}, b.p));
}

TEST_CASE("every strategy leaks strictly less than the ungated baseline") {
  Bench b;
  AnalysisConfig cfg;
  double baseline = standby_leakage(b.c, GatingPlan{}, b.p);

  GatingPlan conv = conventional_gating(b.c, b.tr, cfg.conv_candidates, b.p, 0.1);
  CHECK(standby_leakage(b.c, conv, b.p) < baseline);

  double d_bc = conv.gated_delay_s;
  GatingPlan cb = cbstd_gating(b.c, b.tr, cfg.cbstd_candidates, b.p, d_bc);
  CHECK(standby_leakage(b.c, cb, b.p) < baseline);

  RowAssignment rows = assign_rows(b.c, 7);
  DstnResult res = dstn_size(b.c, rows, cfg.dstn_candidates, cfg.r_rail, b.p, b.tr, d_bc);
  GatingPlan dstn = make_dstn_plan(b.c, rows, res.sol, res.width);
  CHECK(standby_leakage(b.c, dstn, b.p) < baseline);

  auto clusters = cbstd_partition(b.c, b.tr, 1);
  GatingPlan tun =
      tunable_gating(b.c, b.tr, clusters, TunableWord::from_string("1000"), b.p);
  CHECK(standby_leakage(b.c, tun, b.p) < baseline);
}

TEST_CASE("mccmos lengthening of off-path gates cuts leakage, not delay") {
  Bench b;
  std::set<std::string> crit(b.tr.critical_path.begin(), b.tr.critical_path.end());
  Circuit slow = apply_mccmos(b.c, crit, 1.0, 1.1);

  CHECK(cell_leak_sum(slow) < cell_leak_sum(b.c));
  TimingResult tr2 = critical_path(slow, b.p);
  CHECK(tr2.d0 == b.tr.d0);
  CHECK(tr2.critical_path == b.tr.critical_path);
}

TEST_CASE("dynamic power composition") {
  Bench b;
  PowerParams pp;

  PowerParams idle = pp;
  idle.activity = 0.0;
  CHECK(dynamic_power(b.c, GatingPlan{}, idle) == 0.0);

  GatingPlan conv = conventional_gating(b.c, b.tr, {700e-9}, b.p, 1.0);
  CHECK(dynamic_power(b.c, conv, pp) > dynamic_power(b.c, GatingPlan{}, pp));

  // component-wise oracle
  double c_total = 0.0;
  for (const auto& g : b.c.gates) c_total += b.c.find_cell(g.cell)->cl;
  c_total += pp.cap_per_st_width * 700e-9;
  CHECK(dynamic_power(b.c, conv, pp) ==
        Catch::Approx(pp.activity * pp.freq * pp.vdd * pp.vdd * c_total).epsilon(1e-14));
}

TEST_CASE("average power identity and baseline calibration") {
  Bench b;
  PowerParams pp;
  PowerReport r = average_power(b.c, GatingPlan{}, pp, b.p);
  CHECK(r.p_avg == Catch::Approx(pp.duty_active * (r.p_dyn + r.p_leak_active) +
                                 (1.0 - pp.duty_active) * r.p_leak_standby)
                       .epsilon(1e-15));
  CHECK(r.p_dyn >= 0.0);
  CHECK(r.p_leak_active >= 0.0);
  CHECK(r.p_leak_standby >= 0.0);
  // one-point calibration of the ungated multiplier
  CHECK(r.p_avg == Catch::Approx(1.3862e-5).epsilon(1e-9));
}

TEST_CASE("fully active duty with leak-free cells reduces to dynamic power") {
  // hand-built circuit so the leakage terms can be exactly zero
  Circuit c;
  c.cells.push_back(CellDef{"B1", 1, 2e-15, 1e-4, 1e-6, 0.0,  // ileak = 0
                            Geometry{1e-7, 4.5e-8}, LogicFn::Buf});
  c.primary_inputs = {"i"};
  c.primary_outputs = {"y"};
  c.gates.push_back(GateInstance{"g1", "B1", {"i"}, {"y"}, std::nullopt, std::nullopt});
  PowerParams pp;
  pp.duty_active = 1.0;
  DeviceParams p = default_device_params();
  PowerReport r = average_power(c, GatingPlan{}, pp, p);
  CHECK(r.p_avg == r.p_dyn);
}

TEST_CASE("tunable gating reduces average power below the ungated baseline") {
  Bench b;
  PowerParams pp;
  auto clusters = cbstd_partition(b.c, b.tr, 1);
  GatingPlan tun =
      tunable_gating(b.c, b.tr, clusters, TunableWord::from_string("1000"), b.p);
  double gated = average_power(b.c, tun, pp, b.p).p_avg;
  double ungated = average_power(b.c, GatingPlan{}, pp, b.p).p_avg;
  CHECK(gated < ungated);
  // the calibrated model lands near the published 1.61% reduction
  CHECK(power_reduction(gated, ungated) == Catch::Approx(1.61).margin(0.05));
}

TEST_CASE("power reduction percentages") {
  CHECK(power_reduction(1.3638e-5, 1.3862e-5) == Catch::Approx(1.616).margin(0.001));
  CHECK(std::abs(power_reduction(1.3638e-5, 1.3862e-5) - 1.61) <= 0.02);
  CHECK(power_reduction(5.0, 5.0) == 0.0);
  CHECK(power_reduction(0.0, 5.0) == 100.0);
}
