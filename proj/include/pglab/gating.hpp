#pragma once

// Power-gating strategies over a timed netlist: the self-consistent
// virtual-ground solver shared by every scheme, conventional whole-circuit
// gating, critical-path clustering (CBSTD), and the four-device tunable
// sleep-transistor cell with its AND/SLPBAR1 control.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pglab/device_model.hpp"
#include "pglab/errors.hpp"
#include "pglab/netlist.hpp"
#include "pglab/timing.hpp"

namespace pglab {

enum class Strategy { Conventional, Cbstd, Dstn, Tunable };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Conventional: return "conventional";
    case Strategy::Cbstd: return "cbstd";
    case Strategy::Dstn: return "dstn";
    case Strategy::Tunable: return "tunable";
  }
  return "?";
}

enum class ClusterKind { Critical, NonCritical };
enum class StMode { Fixed, Tunable };

// 4-bit tunable-cell configuration word, printed as B3 B2 B1 B0.
struct TunableWord {
  std::array<bool, 4> bits{};  // bits[i] = B_i; B_{i} enables the (i+1)*W device

  static TunableWord from_string(std::string_view s) {
    if (s.size() != 4) throw DomainError("configuration word must have 4 bits");
    TunableWord w;
    for (int i = 0; i < 4; ++i) {
      char ch = s[static_cast<size_t>(3 - i)];
      if (ch != '0' && ch != '1') throw DomainError("configuration word must be binary");
      w.bits[static_cast<size_t>(i)] = (ch == '1');
    }
    return w;
  }
  static TunableWord from_value(int v) {
    if (v < 0 || v > 15) throw DomainError("configuration word value must be 0..15");
    TunableWord w;
    for (int i = 0; i < 4; ++i) w.bits[static_cast<size_t>(i)] = (v >> i) & 1;
    return w;
  }
  int value() const {
    int v = 0;
    for (int i = 0; i < 4; ++i) v |= bits[static_cast<size_t>(i)] << i;
    return v;
  }
  std::string to_string() const {
    std::string s(4, '0');
    for (int i = 0; i < 4; ++i) s[static_cast<size_t>(3 - i)] = bits[static_cast<size_t>(i)] ? '1' : '0';
    return s;
  }
};

struct Cluster {
  int id = 0;
  std::vector<std::string> gate_ids;
  ClusterKind kind = ClusterKind::NonCritical;
  double i_peak = 0.0;  // aggregate peak discharge current (A)
};

struct SleepTransistor {
  Geometry geom{0.0, 0.0};  // FIXED: the device; TUNABLE: the unit (1W) device
  StMode mode = StMode::Fixed;
  std::optional<TunableWord> word;  // required iff TUNABLE
  bool slpbar1 = true;              // 1 = active mode, 0 = standby
};

struct GatingPlan {
  Strategy strategy = Strategy::Conventional;
  std::vector<Cluster> clusters;
  std::map<int, SleepTransistor> st_per_cluster;
  std::map<int, double> vst_per_cluster;  // filled by analysis
  double gated_delay_s = 0.0;             // filled by analysis
  double ctrl_leak_a = 0.0;  // control-logic leakage current (A), tunable plans
  double ctrl_cap_f = 0.0;   // control-logic switched capacitance (F)
};

// Per-device ON/OFF state of the tunable cell: device i conducts iff
// SLPBAR1 = 1 and B_i = 1.
inline std::array<bool, 4> tunable_control(bool slpbar1, const TunableWord& word) {
  std::array<bool, 4> on{};
  for (int i = 0; i < 4; ++i) on[static_cast<size_t>(i)] = slpbar1 && word.bits[static_cast<size_t>(i)];
  return on;
}

// Effective width selected by a configuration word: sum of i*W over the
// enabled weighted devices (i = 1..4, B_{i-1} enables i*W). The integer
// weight is accumulated first so words with equal total width produce
// bit-identical results.
inline double tunable_effective_width(const TunableWord& word, double w_unit) {
  if (!(w_unit > 0.0)) throw DomainError("unit width must be > 0");
  int units = 0;
  for (int i = 1; i <= 4; ++i)
    if (word.bits[static_cast<size_t>(i - 1)]) units += i;
  return units * w_unit;
}

// Total drawn width of the cell (all four devices, conducting or not).
inline double st_physical_width(const SleepTransistor& st) {
  return st.mode == StMode::Tunable ? 10.0 * st.geom.w : st.geom.w;
}

// Width actually conducting in the present mode.
inline double st_active_width(const SleepTransistor& st) {
  if (st.mode == StMode::Fixed) return st.slpbar1 ? st.geom.w : 0.0;
  if (!st.word) throw DomainError("tunable sleep transistor without a configuration word");
  auto on = tunable_control(st.slpbar1, *st.word);
  int units = 0;
  for (int i = 1; i <= 4; ++i)
    if (on[static_cast<size_t>(i - 1)]) units += i;
  return units * st.geom.w;
}

// ---------------------------------------------------------------------------
// Self-consistent virtual-ground drop: the cluster current collapses as the
// drop rises, v = r_on * i_peak0 * ((vdd - v - vth)/(vdd - vth))^alpha.
// f(v) = v - r_on*i(v) is strictly increasing; bisection on [0, vdd - vth).

inline double solve_vst(double i_peak0, double r_on, const DeviceParams& p, double vth) {
  if (i_peak0 < 0.0) throw DomainError("cluster peak current must be >= 0");
  if (r_on < 0.0) throw DomainError("sleep transistor resistance must be >= 0");
  if (!(vth < p.vdd)) throw DomainError("vth must be below vdd");
  if (r_on == 0.0 || i_peak0 == 0.0) return 0.0;

  const double v_cap = p.vdd - vth;
  auto current = [&](double v) {
    return i_peak0 * std::pow((p.vdd - v - vth) / (p.vdd - vth), p.alpha);
  };
  auto f = [&](double v) { return v - r_on * current(v); };

  double lo = 0.0, hi = v_cap;
  if (f(hi) < 0.0)
    throw InfeasibleError("cluster current too large: no virtual-ground drop below vdd - vth");
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * p.vdd; ++iter) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

inline double circuit_i_peak(const Circuit& c, double scale) {
  double sum = 0.0;
  for (const auto& g : c.gates) sum += c.find_cell(g.cell)->i_peak;
  return sum * scale;
}

inline double cluster_i_peak(const Circuit& c, const std::vector<std::string>& gate_ids,
                             double scale) {
  double sum = 0.0;
  for (const auto& id : gate_ids) {
    const GateInstance* g = c.find_gate(id);
    if (!g) throw DomainError("cluster references unknown gate '" + id + "'");
    sum += c.find_cell(g->cell)->i_peak;
  }
  return sum * scale;
}

}  // namespace detail

// Per-gate virtual-ground drop implied by a plan (gates of each cluster see
// that cluster's solved drop).
inline std::map<std::string, double> vst_map_from_plan(const GatingPlan& plan) {
  std::map<std::string, double> m;
  for (const auto& cl : plan.clusters) {
    auto it = plan.vst_per_cluster.find(cl.id);
    double v = (it == plan.vst_per_cluster.end()) ? 0.0 : it->second;
    for (const auto& id : cl.gate_ids) m[id] = v;
  }
  return m;
}

// Checks the partition/ST pairing invariants of a plan against a circuit.
inline void validate_plan(const Circuit& c, const GatingPlan& plan) {
  std::set<std::string> seen;
  for (const auto& cl : plan.clusters) {
    if (cl.gate_ids.empty()) throw DomainError("empty cluster in gating plan");
    if (!(cl.i_peak > 0.0)) throw DomainError("cluster peak current must be > 0");
    for (const auto& id : cl.gate_ids) {
      if (!c.find_gate(id)) throw DomainError("plan references unknown gate '" + id + "'");
      if (!seen.insert(id).second)
        throw DomainError("gate '" + id + "' appears in two clusters");
    }
    auto it = plan.st_per_cluster.find(cl.id);
    if (it == plan.st_per_cluster.end())
      throw DomainError("cluster " + std::to_string(cl.id) + " has no sleep transistor");
    const SleepTransistor& st = it->second;
    if (st.mode == StMode::Tunable && !st.word)
      throw DomainError("tunable sleep transistor requires a configuration word");
    if (st.mode == StMode::Fixed && st.word)
      throw DomainError("fixed sleep transistor must not carry a configuration word");
  }
}

// Knobs shared by the strategy builders.
struct GatingOptions {
  double st_length = 45e-9;     // sleep transistor channel length (m)
  double alpha_drop_ref = 0.1;  // drop point at which R_ON is evaluated
  double i_peak_scale = 1.0;    // calibration factor on summed cluster currents
  double nc_st_width = 270e-9;  // fixed ST width for non-critical clusters (m)
  double w_unit = 135e-9;       // tunable cell unit width (m)
  double ctrl_gate_leak = 5e-9;  // per minimum-size control AND gate (A)
  double ctrl_gate_cap = 2e-16;  // per control AND gate (F)
};

// ---------------------------------------------------------------------------
// Conventional gating: one cluster, one footer; pick the smallest candidate
// width whose solved drop stays within frac*vdd.

inline GatingPlan conventional_gating(const Circuit& c, const TimingResult& tr,
                                      std::vector<double> candidates,
                                      const DeviceParams& p, double frac = 0.1,
                                      const GatingOptions& opt = {}) {
  if (candidates.empty()) throw DomainError("conventional gating requires candidate widths");
  if (c.gates.empty()) throw DomainError("cannot gate an empty circuit");
  std::sort(candidates.begin(), candidates.end());

  Cluster all;
  all.id = 0;
  all.kind = ClusterKind::Critical;
  for (const auto& g : c.gates) all.gate_ids.push_back(g.id);
  all.i_peak = detail::circuit_i_peak(c, opt.i_peak_scale);

  for (double w : candidates) {
    Geometry geom{w, opt.st_length};
    double r_on = on_resistance(geom, p, opt.alpha_drop_ref, p.vth0);
    double v = solve_vst(all.i_peak, r_on, p, p.vth0);
    if (v <= frac * p.vdd) {
      GatingPlan plan;
      plan.strategy = Strategy::Conventional;
      plan.clusters.push_back(all);
      plan.st_per_cluster[0] = SleepTransistor{geom, StMode::Fixed, std::nullopt, true};
      plan.vst_per_cluster[0] = v;
      plan.gated_delay_s = circuit_delay_gated(c, tr, p, vst_map_from_plan(plan));
      return plan;
    }
  }
  throw InfeasibleError("no candidate width keeps the drop within " +
                        format_double(frac) + " * vdd");
}

// ---------------------------------------------------------------------------
// CBSTD: the critical-path gates form the critical cluster; the rest are cut
// into n_nc non-critical clusters by topological bucketing.

inline std::vector<Cluster> cbstd_partition(const Circuit& c, const TimingResult& tr,
                                            int n_nc = 1,
                                            const GatingOptions& opt = {}) {
  if (n_nc < 1) throw DomainError("cbstd requires at least one non-critical bucket");
  std::set<std::string> crit(tr.critical_path.begin(), tr.critical_path.end());

  std::vector<Cluster> clusters;
  Cluster cc;
  cc.id = 0;
  cc.kind = ClusterKind::Critical;
  cc.gate_ids = tr.critical_path;
  if (cc.gate_ids.empty()) throw DomainError("cbstd requires a non-empty critical path");
  cc.i_peak = detail::cluster_i_peak(c, cc.gate_ids, opt.i_peak_scale);
  clusters.push_back(std::move(cc));

  auto levels = detail::topo_levels(c);
  std::vector<size_t> rest;
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    if (!crit.count(c.gates[gi].id)) rest.push_back(gi);
  std::sort(rest.begin(), rest.end(), [&](size_t a, size_t b) {
    if (levels[a] != levels[b]) return levels[a] < levels[b];
    return c.gates[a].id < c.gates[b].id;
  });

  const size_t n = rest.size();
  int next_id = 1;
  for (int b = 0; b < n_nc; ++b) {
    size_t lo = n * static_cast<size_t>(b) / static_cast<size_t>(n_nc);
    size_t hi = n * static_cast<size_t>(b + 1) / static_cast<size_t>(n_nc);
    if (lo == hi) continue;
    Cluster nc;
    nc.id = next_id++;
    nc.kind = ClusterKind::NonCritical;
    for (size_t i = lo; i < hi; ++i) nc.gate_ids.push_back(c.gates[rest[i]].id);
    nc.i_peak = detail::cluster_i_peak(c, nc.gate_ids, opt.i_peak_scale);
    clusters.push_back(std::move(nc));
  }
  return clusters;
}

// Smallest candidate whose gated delay stays within budget*d_bc.
inline double cbstd_select_width(std::vector<double> candidates,
                                 const std::map<double, double>& delays, double d_bc,
                                 double budget = 1.10) {
  if (candidates.empty()) throw DomainError("cbstd selection requires candidate widths");
  if (!(d_bc > 0.0)) throw DomainError("cbstd selection requires d_bc > 0");
  std::sort(candidates.begin(), candidates.end());
  for (double w : candidates) {
    auto it = delays.find(w);
    if (it == delays.end())
      throw DomainError("no delay entry for candidate width " + format_double(w));
    if (it->second <= budget * d_bc) return w;
  }
  throw InfeasibleError("no candidate width meets the delay budget of " +
                        format_double(budget) + " * d_bc");
}

namespace detail {

// Solves every cluster's drop for a CBSTD-style plan: the critical cluster
// gets `w_crit`, non-critical clusters the fixed option width.
inline void solve_plan_drops(const Circuit& c, GatingPlan& plan, const DeviceParams& p,
                             const GatingOptions& opt) {
  for (const auto& cl : plan.clusters) {
    const SleepTransistor& st = plan.st_per_cluster.at(cl.id);
    double w_on = st_active_width(st);
    if (!(w_on > 0.0))
      throw InfeasibleError("cluster " + std::to_string(cl.id) +
                            " has no conducting sleep device in active mode");
    double r_on = on_resistance(Geometry{w_on, st.geom.l}, p, opt.alpha_drop_ref, p.vth0);
    plan.vst_per_cluster[cl.id] = solve_vst(cl.i_peak, r_on, p, p.vth0);
  }
}

}  // namespace detail

// End-to-end CBSTD: evaluates every candidate critical-cluster width against
// the delay budget and keeps the smallest feasible one.
inline GatingPlan cbstd_gating(const Circuit& c, const TimingResult& tr,
                               std::vector<double> candidates, const DeviceParams& p,
                               double d_bc, double budget = 1.10, int n_nc = 1,
                               const GatingOptions& opt = {}) {
  auto clusters = cbstd_partition(c, tr, n_nc, opt);
  std::sort(candidates.begin(), candidates.end());

  std::map<double, double> delays;
  std::map<double, GatingPlan> plans;
  for (double w : candidates) {
    GatingPlan plan;
    plan.strategy = Strategy::Cbstd;
    plan.clusters = clusters;
    plan.st_per_cluster[0] =
        SleepTransistor{Geometry{w, opt.st_length}, StMode::Fixed, std::nullopt, true};
    for (size_t i = 1; i < clusters.size(); ++i)
      plan.st_per_cluster[clusters[i].id] = SleepTransistor{
          Geometry{opt.nc_st_width, opt.st_length}, StMode::Fixed, std::nullopt, true};
    detail::solve_plan_drops(c, plan, p, opt);
    plan.gated_delay_s = circuit_delay_gated(c, tr, p, vst_map_from_plan(plan));
    delays[w] = plan.gated_delay_s;
    plans[w] = std::move(plan);
  }
  double chosen = cbstd_select_width(candidates, delays, d_bc, budget);
  return plans.at(chosen);
}

// ---------------------------------------------------------------------------
// Tunable-cell gating on the critical cluster; non-critical clusters keep
// fixed regular-width footers.

inline GatingPlan tunable_gating(const Circuit& c, const TimingResult& tr,
                                 const std::vector<Cluster>& clusters,
                                 const TunableWord& word, const DeviceParams& p,
                                 const GatingOptions& opt = {}) {
  if (clusters.empty() || clusters.front().kind != ClusterKind::Critical)
    throw DomainError("tunable gating expects cbstd clusters (critical first)");
  GatingPlan plan;
  plan.strategy = Strategy::Tunable;
  plan.clusters = clusters;
  plan.st_per_cluster[clusters.front().id] = SleepTransistor{
      Geometry{opt.w_unit, opt.st_length}, StMode::Tunable, word, true};
  for (size_t i = 1; i < clusters.size(); ++i)
    plan.st_per_cluster[clusters[i].id] = SleepTransistor{
        Geometry{opt.nc_st_width, opt.st_length}, StMode::Fixed, std::nullopt, true};
  plan.ctrl_leak_a = 4.0 * opt.ctrl_gate_leak;
  plan.ctrl_cap_f = 4.0 * opt.ctrl_gate_cap;
  detail::solve_plan_drops(c, plan, p, opt);
  plan.gated_delay_s = circuit_delay_gated(c, tr, p, vst_map_from_plan(plan));
  return plan;
}

}  // namespace pglab
