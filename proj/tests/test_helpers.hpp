#pragma once

// Shared test-only oracles: exhaustive path enumeration (independent of the
// DP in timing.hpp), a layered random DAG builder, and a dense
// Gaussian-elimination solver for rail networks.

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pglab/netlist.hpp"
#include "pglab/rail_network.hpp"

namespace pglab_test {

struct PathOracle {
  double delay = -1.0;
  std::vector<std::string> path;
};

// Enumerates every input-to-output path, accumulating delay along the path in
// order (same fold as a per-path DP walk) and resolving ties to the
// lexicographically smallest id sequence.
inline PathOracle enumerate_longest_path(const pglab::Circuit& c,
                                         const std::map<std::string, double>& delay) {
  using namespace pglab;
  std::map<std::string, size_t> driver;  // net -> gate index
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    for (const auto& net : c.gates[gi].outputs) driver[net] = gi;

  std::vector<std::vector<size_t>> fanout(c.gates.size());
  std::vector<bool> has_gate_input(c.gates.size(), false);
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    for (const auto& net : c.gates[gi].inputs) {
      auto it = driver.find(net);
      if (it != driver.end()) {
        fanout[it->second].push_back(gi);
        has_gate_input[gi] = true;
      }
    }
  std::set<std::string> po(c.primary_outputs.begin(), c.primary_outputs.end());
  std::vector<bool> drives_po(c.gates.size(), false);
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    for (const auto& net : c.gates[gi].outputs)
      if (po.count(net)) drives_po[gi] = true;

  PathOracle best;
  std::vector<std::string> cur;
  auto consider = [&](double d) {
    if (d > best.delay || (d == best.delay && cur < best.path)) {
      best.delay = d;
      best.path = cur;
    }
  };
  // depth-first over all paths
  std::function<void(size_t, double)> walk = [&](size_t gi, double d_in) {
    double d = d_in + delay.at(c.gates[gi].id);
    cur.push_back(c.gates[gi].id);
    if (drives_po[gi]) consider(d);
    for (size_t fo : fanout[gi]) walk(fo, d);
    cur.pop_back();
  };
  for (size_t gi = 0; gi < c.gates.size(); ++gi)
    if (!has_gate_input[gi]) walk(gi, 0.0);
  return best;
}

// Layered random combinational circuit: every gate draws its inputs from the
// previous layer or the primary inputs, sink nets become primary outputs.
inline pglab::Circuit random_layered_circuit(std::mt19937& rng, int n_layers,
                                             int max_per_layer) {
  using namespace pglab;
  Circuit c;
  c.cells.push_back(CellDef{"B1", 1, 1e-15, 1e-4, 1e-6, 1e-9,
                            Geometry{1e-7, 4.5e-8}, LogicFn::Buf});
  c.cells.push_back(CellDef{"X2", 2, 2e-15, 1.3e-4, 1e-6, 1e-9,
                            Geometry{1e-7, 4.5e-8}, LogicFn::HaSum});
  c.cells.push_back(CellDef{"X3", 3, 3e-15, 1.7e-4, 1e-6, 1e-9,
                            Geometry{1e-7, 4.5e-8}, LogicFn::FaSum});

  std::uniform_int_distribution<int> n_pi(1, 4);
  int pis = n_pi(rng);
  for (int i = 0; i < pis; ++i) c.primary_inputs.push_back("i" + std::to_string(i));

  std::vector<std::string> prev = c.primary_inputs;
  int gate_no = 0;
  for (int layer = 0; layer < n_layers; ++layer) {
    std::uniform_int_distribution<int> n_gates(1, max_per_layer);
    int count = n_gates(rng);
    std::vector<std::string> next;
    for (int g = 0; g < count; ++g) {
      std::uniform_int_distribution<int> cell_pick(0, 2);
      const CellDef& cd = c.cells[static_cast<size_t>(cell_pick(rng))];
      GateInstance gi;
      gi.id = "g" + std::to_string(100 + gate_no);
      gi.cell = cd.name;
      std::uniform_int_distribution<int> src(0, static_cast<int>(prev.size()) - 1);
      for (int k = 0; k < cd.n_inputs; ++k)
        gi.inputs.push_back(prev[static_cast<size_t>(src(rng))]);
      std::string out = "n" + std::to_string(100 + gate_no);
      gi.outputs.push_back(out);
      next.push_back(out);
      c.gates.push_back(std::move(gi));
      ++gate_no;
    }
    prev = next;
  }
  // sink nets (not consumed by any gate) become primary outputs
  std::set<std::string> consumed;
  for (const auto& g : c.gates)
    for (const auto& net : g.inputs) consumed.insert(net);
  for (const auto& g : c.gates)
    for (const auto& net : g.outputs)
      if (!consumed.count(net)) c.primary_outputs.push_back(net);
  validate_circuit(c);
  return c;
}

// Dense Gaussian elimination with partial pivoting over the full conductance
// matrix; independent of the tridiagonal solver under test.
inline std::vector<double> dense_rail_solve(const pglab::RailNetwork& net) {
  const int n = net.n_nodes;
  std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n + 1), 0.0));
  const double g = 1.0 / net.r_rail;
  for (int k = 0; k < n; ++k) {
    double d = net.g_st[static_cast<size_t>(k)];
    if (k > 0) {
      d += g;
      a[static_cast<size_t>(k)][static_cast<size_t>(k - 1)] = -g;
    }
    if (k < n - 1) {
      d += g;
      a[static_cast<size_t>(k)][static_cast<size_t>(k + 1)] = -g;
    }
    a[static_cast<size_t>(k)][static_cast<size_t>(k)] = d;
    a[static_cast<size_t>(k)][static_cast<size_t>(n)] = net.i_inj[static_cast<size_t>(k)];
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
          std::abs(a[static_cast<size_t>(pivot)][static_cast<size_t>(col)]))
        pivot = r;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
    for (int r = col + 1; r < n; ++r) {
      double f = a[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                 a[static_cast<size_t>(col)][static_cast<size_t>(col)];
      for (int cc = col; cc <= n; ++cc)
        a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
            f * a[static_cast<size_t>(col)][static_cast<size_t>(cc)];
    }
  }
  std::vector<double> x(static_cast<size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = a[static_cast<size_t>(r)][static_cast<size_t>(n)];
    for (int cc = r + 1; cc < n; ++cc)
      s -= a[static_cast<size_t>(r)][static_cast<size_t>(cc)] * x[static_cast<size_t>(cc)];
    x[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r)][static_cast<size_t>(r)];
  }
  return x;
}

// Random path-graph rail network with n <= max_nodes.
inline pglab::RailNetwork random_rail_network(std::mt19937& rng, int max_nodes) {
  pglab::RailNetwork net;
  std::uniform_int_distribution<int> nn(1, max_nodes);
  net.n_nodes = nn(rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  net.r_rail = 10.0 + u(rng) * 1e4;
  for (int k = 0; k < net.n_nodes; ++k) {
    net.g_st.push_back(1e-4 + u(rng) * 1e-1);
    net.i_inj.push_back(u(rng) < 0.2 ? 0.0 : u(rng) * 1e-2);
  }
  return net;
}

}  // namespace pglab_test
