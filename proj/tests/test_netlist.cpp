#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>

#include "pglab/netlist.hpp"

using namespace pglab;

namespace {

const char* kOneGate =
    "celldef AND2 inputs=2 fn=AND2 cl=2e-15 k=1e-4 ipeak=1e-6 ileak=1e-9 "
    "wn=1.35e-07 ln=4.5e-08\n"
    "input a b\n"
    "output y\n"
    "gate g1 AND2 in=a,b out=y\n";

std::map<std::string, bool> mult_assignment(int a, int b) {
  std::map<std::string, bool> bits;
  for (int i = 0; i < 4; ++i) {
    bits["a" + std::to_string(i)] = (a >> i) & 1;
    bits["b" + std::to_string(i)] = (b >> i) & 1;
  }
  return bits;
}

int as_int(const std::vector<bool>& bits) {
  int v = 0;
  for (size_t i = 0; i < bits.size(); ++i) v |= (bits[i] ? 1 : 0) << i;
  return v;
}

}  // namespace

TEST_CASE("one-gate netlist parses and round-trips") {
  Circuit c = parse_netlist(kOneGate);
  REQUIRE(c.gates.size() == 1);
  CHECK(c.gates[0].id == "g1");
  CHECK(c.primary_inputs.size() == 2);
  CHECK(write_netlist(parse_netlist(write_netlist(c))) == write_netlist(c));
}

TEST_CASE("round trips: multiplier, one gate, no gates") {
  Circuit mult = generate_multiplier4x4(default_cell_library());
  for (const Circuit& c : {mult, parse_netlist(kOneGate), parse_netlist("input a\noutput a\n")}) {
    std::string text = write_netlist(c);
    CHECK(write_netlist(parse_netlist(text)) == text);
  }
}

TEST_CASE("parser reports both driving lines of a doubly driven net") {
  std::string text = std::string(kOneGate) + "gate g2 AND2 in=a,b out=y\n";
  try {
    parse_netlist(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'y'") != std::string::npos);
    CHECK(msg.find("line 5") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
  }
}

TEST_CASE("parser rejects malformed input with line numbers") {
  // undefined cell
  try {
    parse_netlist("input a b\noutput y\ngate g1 NAND2 in=a,b out=y\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("NAND2") != std::string::npos);
  }
  // arity mismatch
  CHECK_THROWS_AS(
      parse_netlist(std::string("celldef AND2 inputs=2 fn=AND2 cl=2e-15 k=1e-4 "
                                "ipeak=1e-6 ileak=1e-9 wn=1e-7 ln=4e-8\n") +
                    "input a\noutput y\ngate g1 AND2 in=a out=y\n"),
      ParseError);
  // dangling input net
  CHECK_THROWS_AS(
      parse_netlist(std::string("celldef AND2 inputs=2 fn=AND2 cl=2e-15 k=1e-4 "
                                "ipeak=1e-6 ileak=1e-9 wn=1e-7 ln=4e-8\n") +
                    "input a\noutput y\ngate g1 AND2 in=a,ghost out=y\n"),
      ParseError);
  // malformed number
  CHECK_THROWS_AS(parse_netlist("celldef AND2 inputs=2 fn=AND2 cl=nope k=1e-4 "
                                "ipeak=1e-6 ileak=1e-9 wn=1e-7 ln=4e-8\n"),
                  ParseError);
  // unknown record
  CHECK_THROWS_AS(parse_netlist("wire a b\n"), ParseError);
  // cycle
  CHECK_THROWS_AS(
      parse_netlist(std::string("celldef B inputs=1 fn=BUF cl=2e-15 k=1e-4 "
                                "ipeak=1e-6 ileak=1e-9 wn=1e-7 ln=4e-8\n") +
                    "input a\noutput y\n"
                    "gate g1 B in=n2 out=n1\ngate g2 B in=n1 out=n2\n"
                    "gate g3 B in=n1 out=y\n"),
      ParseError);
  // geometry override requires both fields
  CHECK_THROWS_AS(parse_netlist(std::string(kOneGate) + "gate g2 AND2 in=a,b out=z wn=1e-7\n"),
                  ParseError);
}

TEST_CASE("multiplier structure") {
  Circuit c = generate_multiplier4x4(default_cell_library());
  REQUIRE(c.gates.size() == 28);
  int n_and = 0, n_ha = 0, n_fa = 0;
  for (const auto& g : c.gates) {
    if (g.cell == "AND2") ++n_and;
    if (g.cell == "HA") ++n_ha;
    if (g.cell == "FA") ++n_fa;
  }
  CHECK(n_and == 16);
  CHECK(n_fa == 8);
  CHECK(n_ha == 4);
  CHECK(c.primary_outputs.size() == 8);
  CHECK_NOTHROW(validate_circuit(c));  // includes the DAG check

  // all seven rows tagged and populated
  std::set<int> rows;
  for (const auto& g : c.gates) {
    REQUIRE(g.row.has_value());
    rows.insert(*g.row);
  }
  CHECK(rows == std::set<int>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("multiplier evaluates to the integer product on all 256 pairs") {
  Circuit c = generate_multiplier4x4(default_cell_library());
  for (int b = 0; b < 16; ++b) CHECK(as_int(evaluate(c, mult_assignment(0, b))) == 0);
  CHECK(as_int(evaluate(c, mult_assignment(15, 15))) == 225);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      REQUIRE(as_int(evaluate(c, mult_assignment(a, b))) == a * b);
}

TEST_CASE("evaluate rejects missing input bits") {
  Circuit c = parse_netlist(kOneGate);
  CHECK_THROWS_AS(evaluate(c, {{"a", true}}), DomainError);
}

TEST_CASE("row assignment is a balanced deterministic partition") {
  Circuit c = generate_multiplier4x4(default_cell_library());

  RowAssignment one = assign_rows(c, 1);
  for (const auto& [id, row] : one.mapping) CHECK(row == 0);

  RowAssignment each = assign_rows(c, static_cast<int>(c.gates.size()));
  std::set<int> used;
  for (const auto& [id, row] : each.mapping) used.insert(row);
  CHECK(used.size() == c.gates.size());

  RowAssignment seven = assign_rows(c, 7);
  std::map<int, int> count;
  for (const auto& [id, row] : seven.mapping) ++count[row];
  REQUIRE(count.size() == 7);
  for (const auto& [row, n] : count) CHECK(n == 4);
  CHECK(seven.mapping.size() == c.gates.size());

  RowAssignment again = assign_rows(c, 7);
  CHECK(again.mapping == seven.mapping);
}

TEST_CASE("mccmos override semantics") {
  Circuit c = generate_multiplier4x4(default_cell_library());

  Circuit same = apply_mccmos(c, {"fa1"}, 1.0, 1.0);
  CHECK(write_netlist(same) == write_netlist(c));

  Circuit longer = apply_mccmos(c, {}, 1.0, 2.0);
  for (const auto& g : longer.gates) {
    REQUIRE(g.geom_override.has_value());
    const CellDef* cd = c.find_cell(g.cell);
    CHECK(g.geom_override->l == 2.0 * cd->geom_n.l);
    CHECK(g.geom_override->w == cd->geom_n.w);
  }

  Circuit wider = apply_mccmos(c, {"fa1"}, 1.5, 1.0);
  CHECK(wider.find_gate("fa1")->geom_override->w ==
        1.5 * c.find_cell("FA")->geom_n.w);
  CHECK(!wider.find_gate("fa2")->geom_override.has_value());

  CHECK_THROWS_AS(apply_mccmos(c, {}, 0.5, 1.0), DomainError);
}
