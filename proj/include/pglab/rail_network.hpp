#pragma once

// Distributed sleep-transistor network: per-row footers whose virtual-ground
// tapping points are chained by rail resistances. Nodal analysis reduces to a
// symmetric tridiagonal system solved by direct elimination.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pglab/device_model.hpp"
#include "pglab/errors.hpp"
#include "pglab/gating.hpp"
#include "pglab/netlist.hpp"
#include "pglab/timing.hpp"

namespace pglab {

struct RailNetwork {
  int n_nodes = 0;        // one node per row
  double r_rail = 0.0;    // resistance between adjacent tapping points (ohm)
  std::vector<double> g_st;   // per-node ST conductance to ground (S)
  std::vector<double> i_inj;  // per-node injected peak current (A)
};

struct RailSolution {
  std::vector<double> v;  // per-node virtual-ground voltage (V)
  double max_v = 0.0;
  int violator_count = 0;  // stamped by check_ir_constraint
};

struct IrVerdict {
  bool pass = false;
  std::vector<int> violators;  // node indices above the limit
};

inline void validate_rail_network(const RailNetwork& net) {
  if (net.n_nodes < 1) throw DomainError("rail network requires at least one node");
  if (!(net.r_rail > 0.0)) throw DomainError("rail resistance must be > 0");
  if (static_cast<int>(net.g_st.size()) != net.n_nodes ||
      static_cast<int>(net.i_inj.size()) != net.n_nodes)
    throw DomainError("rail network vectors must have one entry per node");
  for (double g : net.g_st)
    if (!(g > 0.0)) throw DomainError("every ST conductance must be > 0");
  for (double i : net.i_inj)
    if (i < 0.0) throw DomainError("injected currents must be >= 0");
}

// Builds the DSTN for a row assignment: every row gets a local footer of
// width w_st; the row's gates inject their summed peak current at its node.
inline RailNetwork build_dstn(const Circuit& c, const RowAssignment& rows, double w_st,
                              double r_rail, const DeviceParams& p,
                              const GatingOptions& opt = {}) {
  if (rows.n_rows < 1) throw DomainError("dstn requires at least one row");
  RailNetwork net;
  net.n_nodes = rows.n_rows;
  net.r_rail = r_rail;
  double g = 1.0 / on_resistance(Geometry{w_st, opt.st_length}, p, opt.alpha_drop_ref,
                                 p.vth0);
  net.g_st.assign(static_cast<size_t>(rows.n_rows), g);
  net.i_inj.assign(static_cast<size_t>(rows.n_rows), 0.0);
  for (const auto& gate : c.gates) {
    auto it = rows.mapping.find(gate.id);
    if (it == rows.mapping.end())
      throw DomainError("gate '" + gate.id + "' has no row assignment");
    if (it->second < 0 || it->second >= rows.n_rows)
      throw DomainError("gate '" + gate.id + "' has an out-of-range row");
    net.i_inj[static_cast<size_t>(it->second)] +=
        c.find_cell(gate.cell)->i_peak * opt.i_peak_scale;
  }
  return net;
}

// Solves G*v = i for the path-graph conductance matrix (diagonal: local ST
// conductance plus adjacent rail conductances; off-diagonal: -1/r_rail).
// Direct tridiagonal elimination; the residual is checked against
// 1e-12 * ||i||_inf.
inline RailSolution solve_rail_voltages(const RailNetwork& net) {
  validate_rail_network(net);
  const int n = net.n_nodes;
  const double g_rail = 1.0 / net.r_rail;

  std::vector<double> diag(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    double d = net.g_st[static_cast<size_t>(k)];
    if (k > 0) d += g_rail;
    if (k < n - 1) d += g_rail;
    diag[static_cast<size_t>(k)] = d;
  }

  // Thomas elimination; the system is strictly diagonally dominant.
  std::vector<double> c_prime(static_cast<size_t>(n), 0.0);
  std::vector<double> d_prime(static_cast<size_t>(n), 0.0);
  c_prime[0] = (n > 1) ? -g_rail / diag[0] : 0.0;
  d_prime[0] = net.i_inj[0] / diag[0];
  for (int k = 1; k < n; ++k) {
    double denom = diag[static_cast<size_t>(k)] + g_rail * c_prime[static_cast<size_t>(k - 1)];
    if (denom == 0.0) throw DomainError("singular rail system");
    if (k < n - 1) c_prime[static_cast<size_t>(k)] = -g_rail / denom;
    d_prime[static_cast<size_t>(k)] =
        (net.i_inj[static_cast<size_t>(k)] + g_rail * d_prime[static_cast<size_t>(k - 1)]) /
        denom;
  }

  RailSolution sol;
  sol.v.assign(static_cast<size_t>(n), 0.0);
  sol.v[static_cast<size_t>(n - 1)] = d_prime[static_cast<size_t>(n - 1)];
  for (int k = n - 2; k >= 0; --k)
    sol.v[static_cast<size_t>(k)] =
        d_prime[static_cast<size_t>(k)] -
        c_prime[static_cast<size_t>(k)] * sol.v[static_cast<size_t>(k + 1)];

  // residual check
  double i_norm = 0.0, r_norm = 0.0;
  for (int k = 0; k < n; ++k) {
    double gv = diag[static_cast<size_t>(k)] * sol.v[static_cast<size_t>(k)];
    if (k > 0) gv -= g_rail * sol.v[static_cast<size_t>(k - 1)];
    if (k < n - 1) gv -= g_rail * sol.v[static_cast<size_t>(k + 1)];
    r_norm = std::max(r_norm, std::abs(gv - net.i_inj[static_cast<size_t>(k)]));
    i_norm = std::max(i_norm, std::abs(net.i_inj[static_cast<size_t>(k)]));
  }
  if (r_norm > 1e-12 * std::max(i_norm, 1e-300))
    throw DomainError("rail solve residual exceeds tolerance");

  sol.max_v = *std::max_element(sol.v.begin(), sol.v.end());
  return sol;
}

// Pass iff at most allowed_violations nodes exceed frac*vdd.
inline IrVerdict check_ir_constraint(const RailSolution& sol, double vdd,
                                     double frac = 0.1, int allowed_violations = 0) {
  IrVerdict verdict;
  for (size_t k = 0; k < sol.v.size(); ++k)
    if (sol.v[k] > frac * vdd) verdict.violators.push_back(static_cast<int>(k));
  verdict.pass = static_cast<int>(verdict.violators.size()) <= allowed_violations;
  return verdict;
}

struct DstnResult {
  double width = 0.0;
  RailNetwork net;
  RailSolution sol;
  IrVerdict verdict;
  double gated_delay = 0.0;
};

// Per-gate drops implied by a rail solution: each gate sees its row's node
// voltage.
inline std::map<std::string, double> vst_map_from_rail(const RowAssignment& rows,
                                                       const RailSolution& sol) {
  std::map<std::string, double> m;
  for (const auto& [id, row] : rows.mapping) m[id] = sol.v[static_cast<size_t>(row)];
  return m;
}

// Upsizes the per-row footers through the candidate list until the IR
// constraint holds (with the configured violation allowance) and the gated
// delay stays within budget*d_bc.
inline DstnResult dstn_size(const Circuit& c, const RowAssignment& rows,
                            std::vector<double> candidates, double r_rail,
                            const DeviceParams& p, const TimingResult& tr, double d_bc,
                            double frac = 0.1, int allowed_violations = 1,
                            double budget = 1.10, const GatingOptions& opt = {}) {
  if (candidates.empty()) throw DomainError("dstn sizing requires candidate widths");
  if (!(d_bc > 0.0)) throw DomainError("dstn sizing requires d_bc > 0");
  std::sort(candidates.begin(), candidates.end());
  for (double w : candidates) {
    DstnResult res;
    res.width = w;
    res.net = build_dstn(c, rows, w, r_rail, p, opt);
    res.sol = solve_rail_voltages(res.net);
    res.verdict = check_ir_constraint(res.sol, p.vdd, frac, allowed_violations);
    res.sol.violator_count = static_cast<int>(res.verdict.violators.size());
    res.gated_delay = circuit_delay_gated(c, tr, p, vst_map_from_rail(rows, res.sol));
    if (res.verdict.pass && res.gated_delay <= budget * d_bc) return res;
  }
  throw InfeasibleError("no candidate width satisfies the rail IR constraint and "
                        "delay budget");
}

// DSTN gating plan for power accounting: one cluster per non-empty row, each
// with its local fixed footer.
inline GatingPlan make_dstn_plan(const Circuit& c, const RowAssignment& rows,
                                 const RailSolution& sol, double w_st,
                                 const GatingOptions& opt = {}) {
  GatingPlan plan;
  plan.strategy = Strategy::Dstn;
  std::vector<std::vector<std::string>> by_row(static_cast<size_t>(rows.n_rows));
  for (const auto& g : c.gates) {
    auto it = rows.mapping.find(g.id);
    if (it == rows.mapping.end())
      throw DomainError("gate '" + g.id + "' has no row assignment");
    by_row[static_cast<size_t>(it->second)].push_back(g.id);
  }
  for (int r = 0; r < rows.n_rows; ++r) {
    if (by_row[static_cast<size_t>(r)].empty()) continue;
    Cluster cl;
    cl.id = r;
    cl.kind = ClusterKind::NonCritical;
    cl.gate_ids = by_row[static_cast<size_t>(r)];
    std::sort(cl.gate_ids.begin(), cl.gate_ids.end());
    cl.i_peak = detail::cluster_i_peak(c, cl.gate_ids, opt.i_peak_scale);
    plan.clusters.push_back(std::move(cl));
    plan.st_per_cluster[r] = SleepTransistor{Geometry{w_st, opt.st_length},
                                             StMode::Fixed, std::nullopt, true};
    plan.vst_per_cluster[r] = sol.v[static_cast<size_t>(r)];
  }
  return plan;
}

}  // namespace pglab
