#pragma once

// Full configuration-word sweep of the tunable sleep-transistor cell: one row
// per word 0000..1111 with the effective width, the critical cluster's
// virtual-ground level, the gated circuit delay and the average power.

#include <limits>
#include <string>
#include <vector>

#include "pglab/gating.hpp"
#include "pglab/power.hpp"
#include "pglab/timing.hpp"

namespace pglab {

struct SweepRow {
  std::string word;      // B3 B2 B1 B0
  double eff_width = 0.0;  // m
  double vgnd1 = 0.0;      // critical cluster virtual-ground drop (V)
  double delay = 0.0;      // s
  double avg_power = 0.0;  // W
  bool feasible = false;   // word 0000 has no conduction path
};

// Rows are emitted in ascending word order. Word 0000 is reported as
// infeasible instead of being solved.
inline std::vector<SweepRow> tunable_sweep(const Circuit& c, const TimingResult& tr,
                                           const std::vector<Cluster>& clusters,
                                           const DeviceParams& p, const PowerParams& pp,
                                           const GatingOptions& opt = {}) {
  std::vector<SweepRow> rows;
  rows.reserve(16);
  for (int v = 0; v < 16; ++v) {
    TunableWord word = TunableWord::from_value(v);
    SweepRow row;
    row.word = word.to_string();
    row.eff_width = tunable_effective_width(word, opt.w_unit);
    if (v == 0) {
      row.feasible = false;
      row.vgnd1 = row.delay = row.avg_power =
          std::numeric_limits<double>::quiet_NaN();
    } else {
      GatingPlan plan = tunable_gating(c, tr, clusters, word, p, opt);
      row.feasible = true;
      row.vgnd1 = plan.vst_per_cluster.at(clusters.front().id);
      row.delay = plan.gated_delay_s;
      row.avg_power = average_power(c, plan, pp, p).p_avg;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pglab
