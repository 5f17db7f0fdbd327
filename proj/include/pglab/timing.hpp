#pragma once

// Static timing analysis for combinational netlists: deterministic
// topological ordering, longest-path (critical path) extraction, re-timing
// under per-gate virtual-ground drops, and the (vth, alpha) calibration fit
// for the gated-delay law.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pglab/device_model.hpp"
#include "pglab/errors.hpp"
#include "pglab/netlist.hpp"

namespace pglab {

struct TimingResult {
  double d0 = 0.0;                        // ungated critical-path delay (s)
  std::vector<std::string> critical_path; // ordered gate ids, input to output
  std::map<std::string, double> per_gate_arrival;
};

struct DelayFit {
  double vth_fit = 0.0;
  double alpha_fit = 1.0;
  double d0_ref = 0.0;
  double residual = 0.0;  // max relative error over the fitted rows
};

// Deterministic topological order of gate ids (Kahn, smallest id first).
inline std::vector<std::string> topological_order(const Circuit& c) {
  auto order = detail::topo_gate_order(c);
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (size_t gi : order) ids.push_back(c.gates[gi].id);
  return ids;
}

// Per-instance propagation delay; geometry overrides scale the drive factor
// by (W/Wref)/(L/Lref).
inline double instance_delay(const Circuit& c, const GateInstance& g,
                             const DeviceParams& p) {
  const CellDef* cd = c.find_cell(g.cell);
  if (!cd) throw DomainError("gate '" + g.id + "' references undefined cell '" + g.cell + "'");
  double k_eff = cd->k;
  if (g.geom_override)
    k_eff *= (g.geom_override->w / cd->geom_n.w) * (cd->geom_n.l / g.geom_override->l);
  return gate_delay(cd->cl, k_eff, p, p.vth0);
}

namespace detail {

// Longest path over the gate DAG with the given per-gate delays. Equal-length
// paths resolve to the lexicographically smallest gate-id sequence.
inline TimingResult longest_path(const Circuit& c, const std::vector<double>& delay) {
  if (c.primary_outputs.empty())
    throw DomainError("timing analysis requires at least one primary output");

  auto drivers = driver_map(c);
  auto order = topo_gate_order(c);
  const size_t n = c.gates.size();
  constexpr size_t kNone = std::numeric_limits<size_t>::max();
  std::vector<double> arrival(n, 0.0);
  std::vector<size_t> pred(n, kNone);

  // Reconstructs the chosen id sequence ending at gate gi.
  auto path_of = [&](size_t gi) {
    std::vector<std::string> path;
    for (size_t g = gi; g != kNone; g = pred[g]) path.push_back(c.gates[g].id);
    std::reverse(path.begin(), path.end());
    return path;
  };

  for (size_t gi : order) {
    double best = 0.0;
    size_t best_pred = kNone;
    for (const auto& net : c.gates[gi].inputs) {
      auto it = drivers.find(net);
      if (it == drivers.end()) continue;  // primary input, arrival 0
      size_t pi = it->second;
      if (arrival[pi] > best) {
        best = arrival[pi];
        best_pred = pi;
      } else if (arrival[pi] == best && best_pred != kNone && pi != best_pred) {
        if (path_of(pi) < path_of(best_pred)) best_pred = pi;
      }
    }
    pred[gi] = best_pred;
    arrival[gi] = best + delay[gi];
  }

  // The path ends at a gate driving a primary output.
  std::set<std::string> po_set(c.primary_outputs.begin(), c.primary_outputs.end());
  size_t end = kNone;
  for (size_t gi : order) {
    bool drives_po = false;
    for (const auto& net : c.gates[gi].outputs) drives_po = drives_po || po_set.count(net);
    if (!drives_po) continue;
    if (end == kNone || arrival[gi] > arrival[end]) {
      end = gi;
    } else if (arrival[gi] == arrival[end] && path_of(gi) < path_of(end)) {
      end = gi;
    }
  }

  TimingResult tr;
  for (size_t gi = 0; gi < n; ++gi) tr.per_gate_arrival[c.gates[gi].id] = arrival[gi];
  if (end != kNone) {
    tr.d0 = arrival[end];
    tr.critical_path = path_of(end);
  }
  return tr;
}

}  // namespace detail

inline TimingResult critical_path(const Circuit& c, const DeviceParams& p) {
  std::vector<double> delay(c.gates.size());
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    delay[gi] = instance_delay(c, c.gates[gi], p);
  return detail::longest_path(c, delay);
}

// Circuit delay once each gate's delay is inflated by its cluster's
// virtual-ground drop (0 for gates absent from the map). The longest path is
// recomputed, so the critical path may shift. Result >= tr.d0.
inline double circuit_delay_gated(const Circuit& c, const TimingResult& tr,
                                  const DeviceParams& p,
                                  const std::map<std::string, double>& vst_per_gate) {
  std::vector<double> delay(c.gates.size());
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const GateInstance& g = c.gates[gi];
    double d = instance_delay(c, g, p);
    auto it = vst_per_gate.find(g.id);
    if (it != vst_per_gate.end() && it->second != 0.0)
      d = gated_delay(d, it->second, p, p.vth0);
    delay[gi] = d;
  }
  TimingResult gated = detail::longest_path(c, delay);
  return std::max(gated.d0, tr.d0);
}

// ---------------------------------------------------------------------------
// Calibration fit: find (vth, alpha) minimising the worst relative error of
//   pred(vst) = d0_ref * ((vdd - vth)/(vdd - vst - vth))^alpha
// against measured (vst, delay) rows. Deterministic grid search with four
// shrinking refinement rounds; minimax objective.

inline DelayFit fit_delay_model(const std::vector<std::pair<double, double>>& rows,
                                double d0_ref, double vdd = 1.0) {
  if (rows.empty()) throw DomainError("delay fit requires at least one row");
  if (!(d0_ref > 0.0)) throw DomainError("delay fit requires d0_ref > 0");
  double max_vst = 0.0;
  for (const auto& [vst, meas] : rows) {
    if (vst < 0.0) throw DomainError("delay fit rows require vst >= 0");
    if (!(meas > 0.0)) throw DomainError("delay fit rows require measured delay > 0");
    max_vst = std::max(max_vst, vst);
  }
  const double vth_cap = vdd - max_vst;
  if (!(vth_cap > 0.0))
    throw InfeasibleError("no feasible vth: a fitted row has vst >= vdd");

  const double vth_lo0 = 1e-6 * vdd;
  const double vth_hi0 = vth_cap * (1.0 - 1e-9);
  if (!(vth_lo0 < vth_hi0))
    throw InfeasibleError("no feasible vth window for the delay fit");

  auto objective = [&](double vth, double alpha) {
    double worst = 0.0;
    for (const auto& [vst, meas] : rows) {
      double pred = d0_ref * std::pow((vdd - vth) / (vdd - vst - vth), alpha);
      worst = std::max(worst, std::abs(pred - meas) / meas);
    }
    return worst;
  };

  double best_vth = vth_lo0, best_alpha = 1.0;
  double best_obj = std::numeric_limits<double>::infinity();
  auto scan = [&](double vlo, double vhi, int vn, double alo, double ahi, int an) {
    for (int i = 0; i < vn; ++i) {
      double vth = (vn == 1) ? vlo : vlo + (vhi - vlo) * i / (vn - 1);
      for (int j = 0; j < an; ++j) {
        double alpha = (an == 1) ? alo : alo + (ahi - alo) * j / (an - 1);
        double obj = objective(vth, alpha);
        if (obj < best_obj) {
          best_obj = obj;
          best_vth = vth;
          best_alpha = alpha;
        }
      }
    }
  };

  scan(vth_lo0, vth_hi0, 201, 1.0, 2.0, 101);
  double span_v = (vth_hi0 - vth_lo0) / 200.0;
  double span_a = 0.01;
  for (int round = 0; round < 4; ++round) {
    double vlo = std::max(vth_lo0, best_vth - span_v);
    double vhi = std::min(vth_hi0, best_vth + span_v);
    double alo = std::max(1.0, best_alpha - span_a);
    double ahi = std::min(2.0, best_alpha + span_a);
    scan(vlo, vhi, 41, alo, ahi, 41);
    span_v /= 20.0;
    span_a /= 20.0;
  }

  return DelayFit{best_vth, best_alpha, d0_ref, best_obj};
}

}  // namespace pglab
