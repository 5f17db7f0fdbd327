#pragma once

// Power accounting: standby leakage through the sleep transistors and the
// ungated cells, switched-capacitance dynamic power, and duty-cycled average
// power.

#include <map>
#include <set>
#include <string>

#include "pglab/device_model.hpp"
#include "pglab/errors.hpp"
#include "pglab/gating.hpp"
#include "pglab/netlist.hpp"

namespace pglab {

struct PowerParams {
  double freq = 2e8;        // switching frequency (Hz)
  double activity = 0.15;   // switching activity factor
  double duty_active = 0.5; // fraction of time in active mode
  double vdd = 1.0;         // supply voltage (V)
  double cap_per_st_width = 1e-9;  // sleep-transistor gate cap per width (F/m)
};

struct PowerReport {
  double p_dyn = 0.0;
  double p_leak_active = 0.0;
  double p_leak_standby = 0.0;
  double p_avg = 0.0;
};

namespace detail {

// Cell leakage scaled by the instance geometry: ileak_ref * (W/Wref)/(L/Lref).
inline double instance_leak_current(const Circuit& c, const GateInstance& g) {
  const CellDef* cd = c.find_cell(g.cell);
  double i = cd->i_leak_ref;
  if (g.geom_override)
    i *= (g.geom_override->w / cd->geom_n.w) * (cd->geom_n.l / g.geom_override->l);
  return i;
}

}  // namespace detail

// Standby power: every gated cluster leaks only through its (off) sleep
// transistor stack, biased at VGS = 0, VDS = vdd; gates outside any cluster
// keep their full cell leakage; tunable control logic always leaks.
inline double standby_leakage(const Circuit& c, const GatingPlan& plan,
                              const DeviceParams& p) {
  std::set<std::string> gated;
  double i_total = 0.0;
  for (const auto& cl : plan.clusters) {
    for (const auto& id : cl.gate_ids) gated.insert(id);
    const SleepTransistor& st = plan.st_per_cluster.at(cl.id);
    Geometry off{st_physical_width(st), st.geom.l};
    i_total += subthreshold_current(p, off, BiasPoint{0.0, 0.0, p.vdd});
  }
  for (const auto& g : c.gates)
    if (!gated.count(g.id)) i_total += detail::instance_leak_current(c, g);
  i_total += plan.ctrl_leak_a;
  return i_total * p.vdd;
}

// Active-mode dynamic power: activity * f * vdd^2 * C_total, where C_total
// sums the cell output loads, the conducting sleep-transistor width times the
// per-width gate cap, and the tunable control capacitance.
inline double dynamic_power(const Circuit& c, const GatingPlan& plan,
                            const PowerParams& pp) {
  if (pp.activity < 0.0 || pp.activity > 1.0)
    throw DomainError("activity factor must lie in [0, 1]");
  if (!(pp.freq > 0.0)) throw DomainError("frequency must be > 0");
  double c_total = 0.0;
  for (const auto& g : c.gates) c_total += c.find_cell(g.cell)->cl;
  for (const auto& [id, st] : plan.st_per_cluster)
    c_total += pp.cap_per_st_width * st_active_width(st);
  c_total += plan.ctrl_cap_f;
  return pp.activity * pp.freq * pp.vdd * pp.vdd * c_total;
}

// Duty-cycled average power. Cells leak at full strength whenever the rails
// are up, so active leakage is the ungated cell total plus control logic.
inline PowerReport average_power(const Circuit& c, const GatingPlan& plan,
                                 const PowerParams& pp, const DeviceParams& p) {
  if (pp.duty_active < 0.0 || pp.duty_active > 1.0)
    throw DomainError("duty_active must lie in [0, 1]");
  PowerReport r;
  r.p_dyn = dynamic_power(c, plan, pp);
  double i_cells = 0.0;
  for (const auto& g : c.gates) i_cells += detail::instance_leak_current(c, g);
  r.p_leak_active = (i_cells + plan.ctrl_leak_a) * pp.vdd;
  r.p_leak_standby = standby_leakage(c, plan, p);
  r.p_avg = pp.duty_active * (r.p_dyn + r.p_leak_active) +
            (1.0 - pp.duty_active) * r.p_leak_standby;
  return r;
}

inline double power_reduction(double p_gated, double p_ungated) {
  if (p_gated < 0.0 || p_ungated < 0.0) throw DomainError("powers must be >= 0");
  if (p_ungated == 0.0) return 0.0;
  return 100.0 * (p_ungated - p_gated) / p_ungated;
}

}  // namespace pglab
