#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pglab/timing.hpp"
#include "test_helpers.hpp"

using namespace pglab;

namespace {

// chain of three buffers: i -> g1 -> g2 -> g3 -> y
Circuit buffer_chain(int n) {
  Circuit c;
  c.cells.push_back(CellDef{"B1", 1, 1e-15, 1e-4, 1e-6, 1e-9,
                            Geometry{1e-7, 4.5e-8}, LogicFn::Buf});
  c.primary_inputs.push_back("i");
  std::string prev = "i";
  for (int k = 1; k <= n; ++k) {
    std::string out = (k == n) ? "y" : "n" + std::to_string(k);
    c.gates.push_back(GateInstance{"g" + std::to_string(k), "B1", {prev}, {out},
                                   std::nullopt, std::nullopt});
    prev = out;
  }
  c.primary_outputs.push_back("y");
  validate_circuit(c);
  return c;
}

std::map<std::string, double> delay_map(const Circuit& c, const DeviceParams& p) {
  std::map<std::string, double> m;
  for (const auto& g : c.gates) m[g.id] = instance_delay(c, g, p);
  return m;
}

}  // namespace

TEST_CASE("topological order for chains and independent gates") {
  DeviceParams p = default_device_params();
  Circuit chain = buffer_chain(3);
  CHECK(topological_order(chain) == std::vector<std::string>{"g1", "g2", "g3"});

  Circuit ind;
  ind.cells = chain.cells;
  ind.primary_inputs = {"i"};
  ind.primary_outputs = {"x", "y", "z"};
  for (auto [id, out] : {std::pair{"gc", "x"}, {"ga", "y"}, {"gb", "z"}})
    ind.gates.push_back(GateInstance{id, "B1", {"i"}, {out}, std::nullopt, std::nullopt});
  validate_circuit(ind);
  CHECK(topological_order(ind) == std::vector<std::string>{"ga", "gb", "gc"});

  // every gate follows its drivers in the multiplier
  Circuit mult = generate_multiplier4x4(default_cell_library());
  auto order = topological_order(mult);
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::map<std::string, std::string> driver_of_net;
  for (const auto& g : mult.gates)
    for (const auto& net : g.outputs) driver_of_net[net] = g.id;
  for (const auto& g : mult.gates)
    for (const auto& net : g.inputs) {
      auto it = driver_of_net.find(net);
      if (it != driver_of_net.end()) CHECK(pos.at(it->second) < pos.at(g.id));
    }
}

TEST_CASE("critical path basics") {
  DeviceParams p = default_device_params();
  Circuit one = buffer_chain(1);
  TimingResult tr1 = critical_path(one, p);
  double d1 = instance_delay(one, one.gates[0], p);
  CHECK(tr1.d0 == d1);
  CHECK(tr1.critical_path == std::vector<std::string>{"g1"});

  Circuit three = buffer_chain(3);
  TimingResult tr3 = critical_path(three, p);
  CHECK(tr3.d0 == Catch::Approx(3.0 * d1).epsilon(1e-12));
  CHECK(tr3.critical_path == std::vector<std::string>{"g1", "g2", "g3"});

  Circuit no_outputs = three;
  no_outputs.primary_outputs.clear();
  CHECK_THROWS_AS(critical_path(no_outputs, p), DomainError);
}

TEST_CASE("multiplier critical path matches exhaustive enumeration") {
  DeviceParams p = default_device_params();
  Circuit c = generate_multiplier4x4(default_cell_library());
  TimingResult tr = critical_path(c, p);
  auto oracle = pglab_test::enumerate_longest_path(c, delay_map(c, p));
  CHECK(tr.d0 == oracle.delay);
  CHECK(tr.critical_path == oracle.path);
  // the reference ungated delay of the calibrated library
  CHECK(tr.d0 == Catch::Approx(2.3836e-10).epsilon(1e-12));
  CHECK(tr.critical_path.size() == 9);
}

TEST_CASE("critical path equals enumeration on random layered DAGs") {
  DeviceParams p = default_device_params();
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    Circuit c = pglab_test::random_layered_circuit(rng, 1 + trial % 7, 5);
    REQUIRE(c.gates.size() <= 40);
    TimingResult tr = critical_path(c, p);
    auto oracle = pglab_test::enumerate_longest_path(c, delay_map(c, p));
    REQUIRE(tr.d0 == oracle.delay);
    REQUIRE(tr.critical_path == oracle.path);
  }
}

TEST_CASE("gated circuit delay") {
  DeviceParams p = default_device_params();
  Circuit c = generate_multiplier4x4(default_cell_library());
  TimingResult tr = critical_path(c, p);

  std::map<std::string, double> zero;
  for (const auto& g : c.gates) zero[g.id] = 0.0;
  CHECK(circuit_delay_gated(c, tr, p, zero) == tr.d0);

  // a uniform drop scales the whole path by a common factor
  double vst = 0.08;
  std::map<std::string, double> uniform;
  for (const auto& g : c.gates) uniform[g.id] = vst;
  double factor = std::pow((p.vdd - p.vth0) / (p.vdd - vst - p.vth0), p.alpha);
  CHECK(circuit_delay_gated(c, tr, p, uniform) ==
        Catch::Approx(tr.d0 * factor).epsilon(1e-12));

  // a small drop confined to off-path gates leaves the delay unchanged
  std::set<std::string> crit(tr.critical_path.begin(), tr.critical_path.end());
  std::map<std::string, double> off_path;
  for (const auto& g : c.gates)
    if (!crit.count(g.id)) off_path[g.id] = 0.005;
  CHECK(circuit_delay_gated(c, tr, p, off_path) == tr.d0);

  // monotone non-decreasing in any per-gate drop
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.0, 0.4);
  std::map<std::string, double> base;
  for (const auto& g : c.gates) base[g.id] = u(rng);
  double d_base = circuit_delay_gated(c, tr, p, base);
  for (int i = 0; i < 20; ++i) {
    auto bumped = base;
    auto it = bumped.begin();
    std::advance(it, static_cast<long>(i % bumped.size()));
    it->second += 0.05;
    CHECK(circuit_delay_gated(c, tr, p, bumped) >= d_base);
  }
}

TEST_CASE("delay fit recovers synthetic parameters") {
  const double vth = 0.3, alpha = 1.4, d0 = 2e-10;
  std::vector<std::pair<double, double>> rows;
  for (double vst : {0.05, 0.10, 0.15, 0.20, 0.25})
    rows.push_back({vst, d0 * std::pow((1.0 - vth) / (1.0 - vst - vth), alpha)});
  DelayFit fit = fit_delay_model(rows, d0, 1.0);
  CHECK(std::abs(fit.vth_fit - vth) < 1e-3);
  CHECK(std::abs(fit.alpha_fit - alpha) < 1e-3);
  CHECK(fit.residual < 1e-6);
}

TEST_CASE("delay fit degenerate and error cases") {
  DelayFit fit = fit_delay_model({{0.0, 2e-10}}, 2e-10, 1.0);
  CHECK(fit.residual == 0.0);

  CHECK_THROWS_AS(fit_delay_model({}, 2e-10), DomainError);
  CHECK_THROWS_AS(fit_delay_model({{0.1, 2e-10}}, 0.0), DomainError);
  CHECK_THROWS_AS(fit_delay_model({{1.2, 2e-10}}, 2e-10), InfeasibleError);
}

TEST_CASE("delay fit on the reference sizing data") {
  std::vector<std::pair<double, double>> rows = {{0.250, 3.4112e-10},
                                                 {0.173, 2.9149e-10},
                                                 {0.134, 2.7531e-10},
                                                 {0.108, 2.6676e-10},
                                                 {0.089, 2.6052e-10}};
  DelayFit fit = fit_delay_model(rows, 2.3836e-10, 1.0);
  CHECK(fit.residual <= 0.05);
  CHECK(fit.alpha_fit >= 1.0);
  CHECK(fit.alpha_fit <= 2.0);

  // deterministic and invariant under row reordering
  DelayFit again = fit_delay_model(rows, 2.3836e-10, 1.0);
  CHECK(again.vth_fit == fit.vth_fit);
  CHECK(again.alpha_fit == fit.alpha_fit);
  CHECK(again.residual == fit.residual);

  std::reverse(rows.begin(), rows.end());
  DelayFit rev = fit_delay_model(rows, 2.3836e-10, 1.0);
  CHECK(rev.residual == fit.residual);

  // the shipped defaults were frozen from this fit
  DeviceParams p = default_device_params();
  CHECK(p.vth0 == Catch::Approx(fit.vth_fit).epsilon(1e-12));
  CHECK(p.alpha == Catch::Approx(fit.alpha_fit).epsilon(1e-12));
}
