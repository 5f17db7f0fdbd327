#pragma once

// Gate-level combinational netlist: cell library, instances, nets, the text
// netlist format, a functional evaluator, the 4x4 array-multiplier generator,
// row assignment for distributed gating, and per-gate geometry overrides.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pglab/device_model.hpp"
#include "pglab/errors.hpp"
#include "pglab/text_util.hpp"

namespace pglab {

enum class LogicFn { And2, HaSum, HaCarry, FaSum, FaCarry, Buf, Ha, Fa };

inline const char* logic_fn_token(LogicFn fn) {
  switch (fn) {
    case LogicFn::And2: return "AND2";
    case LogicFn::HaSum: return "HA_SUM";
    case LogicFn::HaCarry: return "HA_CARRY";
    case LogicFn::FaSum: return "FA_SUM";
    case LogicFn::FaCarry: return "FA_CARRY";
    case LogicFn::Buf: return "BUF";
    case LogicFn::Ha: return "HA";
    case LogicFn::Fa: return "FA";
  }
  return "?";
}

inline std::optional<LogicFn> logic_fn_from_token(std::string_view tok) {
  if (tok == "AND2") return LogicFn::And2;
  if (tok == "HA_SUM") return LogicFn::HaSum;
  if (tok == "HA_CARRY") return LogicFn::HaCarry;
  if (tok == "FA_SUM") return LogicFn::FaSum;
  if (tok == "FA_CARRY") return LogicFn::FaCarry;
  if (tok == "BUF") return LogicFn::Buf;
  if (tok == "HA") return LogicFn::Ha;
  if (tok == "FA") return LogicFn::Fa;
  return std::nullopt;
}

inline int logic_fn_inputs(LogicFn fn) {
  switch (fn) {
    case LogicFn::Buf: return 1;
    case LogicFn::FaSum:
    case LogicFn::FaCarry:
    case LogicFn::Fa: return 3;
    default: return 2;
  }
}

inline int logic_fn_outputs(LogicFn fn) {
  return (fn == LogicFn::Ha || fn == LogicFn::Fa) ? 2 : 1;
}

struct CellDef {
  std::string name;
  int n_inputs = 0;
  double cl = 0.0;          // output load capacitance (F)
  double k = 0.0;           // alpha-power-law drive factor
  double i_peak = 0.0;      // peak discharge current at vst = 0 (A)
  double i_leak_ref = 0.0;  // standby leakage at the reference geometry (A)
  Geometry geom_n{0.0, 0.0};  // representative NMOS geometry
  LogicFn fn = LogicFn::Buf;
};

struct GateInstance {
  std::string id;
  std::string cell;
  std::vector<std::string> inputs;   // ordered net ids
  std::vector<std::string> outputs;  // ordered net ids; HA/FA emit (sum, carry)
  std::optional<int> row;
  std::optional<Geometry> geom_override;  // McCMOS per-gate W/L
};

struct Circuit {
  std::vector<CellDef> cells;
  std::vector<GateInstance> gates;
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;

  const CellDef* find_cell(std::string_view name) const {
    for (const auto& c : cells)
      if (c.name == name) return &c;
    return nullptr;
  }
  const GateInstance* find_gate(std::string_view id) const {
    for (const auto& g : gates)
      if (g.id == id) return &g;
    return nullptr;
  }
};

struct RowAssignment {
  int n_rows = 0;
  std::map<std::string, int> mapping;  // gate id -> row index
};

namespace detail {

// net -> index of the driving gate. Throws on multiple drivers.
inline std::map<std::string, size_t, std::less<>> driver_map(const Circuit& c) {
  std::map<std::string, size_t, std::less<>> drivers;
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    for (const auto& net : c.gates[gi].outputs) {
      auto [it, inserted] = drivers.emplace(net, gi);
      if (!inserted)
        throw DomainError("net '" + net + "' driven by both gate '" +
                          c.gates[it->second].id + "' and gate '" + c.gates[gi].id + "'");
    }
  }
  return drivers;
}

// Kahn topological order over gate indices, smallest gate id first among the
// ready set. Throws with a cycle witness when the circuit is cyclic.
inline std::vector<size_t> topo_gate_order(const Circuit& c) {
  auto drivers = driver_map(c);
  const size_t n = c.gates.size();
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<size_t>> fanout(n);
  for (size_t gi = 0; gi < n; ++gi) {
    for (const auto& net : c.gates[gi].inputs) {
      auto it = drivers.find(net);
      if (it != drivers.end()) {
        fanout[it->second].push_back(gi);
        ++indeg[gi];
      }
    }
  }
  auto id_less = [&](size_t a, size_t b) {
    if (c.gates[a].id != c.gates[b].id) return c.gates[a].id < c.gates[b].id;
    return a < b;
  };
  std::set<size_t, decltype(id_less)> ready(id_less);
  for (size_t gi = 0; gi < n; ++gi)
    if (indeg[gi] == 0) ready.insert(gi);

  std::vector<size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    size_t gi = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(gi);
    for (size_t fo : fanout[gi])
      if (--indeg[fo] == 0) ready.insert(fo);
  }
  if (order.size() != n) {
    std::string witness;
    for (size_t gi = 0; gi < n; ++gi)
      if (indeg[gi] > 0) witness += (witness.empty() ? "" : " -> ") + c.gates[gi].id;
    throw DomainError("netlist contains a cycle through: " + witness);
  }
  return order;
}

// Longest-distance topological level per gate (gates fed only by primary
// inputs sit at level 0).
inline std::vector<int> topo_levels(const Circuit& c) {
  auto drivers = driver_map(c);
  auto order = topo_gate_order(c);
  std::vector<int> level(c.gates.size(), 0);
  for (size_t gi : order) {
    int lv = 0;
    for (const auto& net : c.gates[gi].inputs) {
      auto it = drivers.find(net);
      if (it != drivers.end()) lv = std::max(lv, level[it->second] + 1);
    }
    level[gi] = lv;
  }
  return level;
}

}  // namespace detail

// Enforces the structural invariants: known cells, matching arities, unique
// ids, single drivers, no dangling inputs, acyclicity.
inline void validate_circuit(const Circuit& c) {
  std::set<std::string> cell_names;
  for (const auto& cd : c.cells) {
    if (!cell_names.insert(cd.name).second)
      throw DomainError("duplicate cell definition '" + cd.name + "'");
    if (cd.n_inputs != logic_fn_inputs(cd.fn))
      throw DomainError("cell '" + cd.name + "': inputs=" + std::to_string(cd.n_inputs) +
                        " does not match fn " + logic_fn_token(cd.fn));
    if (!(cd.cl > 0.0 && cd.k > 0.0 && cd.i_peak > 0.0 && cd.i_leak_ref > 0.0))
      throw DomainError("cell '" + cd.name + "': cl, k, ipeak, ileak must be > 0");
    if (!(cd.geom_n.w > 0.0 && cd.geom_n.l > 0.0))
      throw DomainError("cell '" + cd.name + "': geometry must be positive");
  }
  std::set<std::string> pi_set(c.primary_inputs.begin(), c.primary_inputs.end());
  if (pi_set.size() != c.primary_inputs.size())
    throw DomainError("duplicate primary input net");

  std::set<std::string> gate_ids;
  for (const auto& g : c.gates) {
    if (!gate_ids.insert(g.id).second)
      throw DomainError("duplicate gate id '" + g.id + "'");
    const CellDef* cd = c.find_cell(g.cell);
    if (!cd) throw DomainError("gate '" + g.id + "' references undefined cell '" + g.cell + "'");
    if (static_cast<int>(g.inputs.size()) != cd->n_inputs)
      throw DomainError("gate '" + g.id + "': expected " + std::to_string(cd->n_inputs) +
                        " inputs, got " + std::to_string(g.inputs.size()));
    if (static_cast<int>(g.outputs.size()) != logic_fn_outputs(cd->fn))
      throw DomainError("gate '" + g.id + "': expected " +
                        std::to_string(logic_fn_outputs(cd->fn)) + " outputs, got " +
                        std::to_string(g.outputs.size()));
    if (g.geom_override && !(g.geom_override->w > 0.0 && g.geom_override->l > 0.0))
      throw DomainError("gate '" + g.id + "': geometry override must be positive");
  }

  auto drivers = detail::driver_map(c);  // throws on multiple drivers
  for (const auto& [net, gi] : drivers)
    if (pi_set.count(net))
      throw DomainError("primary input net '" + net + "' is also driven by gate '" +
                        c.gates[gi].id + "'");
  for (const auto& g : c.gates)
    for (const auto& net : g.inputs)
      if (!pi_set.count(net) && !drivers.count(net))
        throw DomainError("gate '" + g.id + "' input net '" + net + "' has no driver");
  for (const auto& net : c.primary_outputs)
    if (!pi_set.count(net) && !drivers.count(net))
      throw DomainError("primary output net '" + net + "' has no driver");

  detail::topo_gate_order(c);  // throws on cycles
}

// ---------------------------------------------------------------------------
// Text format. One record per line, '#' comments:
//   celldef NAME inputs=N fn=FN cl=F k=F ipeak=F ileak=F wn=F ln=F
//   input NET...
//   output NET...
//   gate ID CELL in=NET[,NET...] out=NET[,NET] [row=N] [wn=F ln=F]

inline Circuit parse_netlist(std::string_view text) {
  Circuit c;
  // for the two-driver diagnostic: net -> line that first drove it
  std::map<std::string, int, std::less<>> driver_line;
  bool saw_inputs = false, saw_outputs = false;

  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++lineno;
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;

    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    std::string_view rec = toks[0];

    if (rec == "celldef") {
      if (toks.size() < 2) throw ParseError(lineno, "celldef requires a name");
      CellDef cd;
      cd.name = std::string(toks[1]);
      bool have[8] = {};
      for (size_t i = 2; i < toks.size(); ++i) {
        std::string_view key, val;
        if (!split_kv(toks[i], key, val))
          throw ParseError(lineno, "malformed field '" + std::string(toks[i]) + "'");
        if (key == "inputs") { cd.n_inputs = static_cast<int>(parse_long(val, lineno, "inputs")); have[0] = true; }
        else if (key == "fn") {
          auto fn = logic_fn_from_token(val);
          if (!fn) throw ParseError(lineno, "unknown logic fn '" + std::string(val) + "'");
          cd.fn = *fn; have[1] = true;
        }
        else if (key == "cl") { cd.cl = parse_double(val, lineno, "cl"); have[2] = true; }
        else if (key == "k") { cd.k = parse_double(val, lineno, "k"); have[3] = true; }
        else if (key == "ipeak") { cd.i_peak = parse_double(val, lineno, "ipeak"); have[4] = true; }
        else if (key == "ileak") { cd.i_leak_ref = parse_double(val, lineno, "ileak"); have[5] = true; }
        else if (key == "wn") { cd.geom_n.w = parse_double(val, lineno, "wn"); have[6] = true; }
        else if (key == "ln") { cd.geom_n.l = parse_double(val, lineno, "ln"); have[7] = true; }
        else throw ParseError(lineno, "unknown celldef field '" + std::string(key) + "'");
      }
      for (bool h : have)
        if (!h) throw ParseError(lineno, "celldef '" + cd.name + "' is missing a required field");
      c.cells.push_back(std::move(cd));
    } else if (rec == "input") {
      if (saw_inputs) throw ParseError(lineno, "duplicate input record");
      saw_inputs = true;
      for (size_t i = 1; i < toks.size(); ++i) c.primary_inputs.emplace_back(toks[i]);
    } else if (rec == "output") {
      if (saw_outputs) throw ParseError(lineno, "duplicate output record");
      saw_outputs = true;
      for (size_t i = 1; i < toks.size(); ++i) c.primary_outputs.emplace_back(toks[i]);
    } else if (rec == "gate") {
      if (toks.size() < 3) throw ParseError(lineno, "gate requires an id and a cell name");
      GateInstance g;
      g.id = std::string(toks[1]);
      g.cell = std::string(toks[2]);
      std::optional<double> wn, ln;
      for (size_t i = 3; i < toks.size(); ++i) {
        std::string_view key, val;
        if (!split_kv(toks[i], key, val))
          throw ParseError(lineno, "malformed field '" + std::string(toks[i]) + "'");
        if (key == "in") {
          for (auto net : split(val, ','))
            if (!net.empty()) g.inputs.emplace_back(net);
        } else if (key == "out") {
          for (auto net : split(val, ','))
            if (!net.empty()) g.outputs.emplace_back(net);
        } else if (key == "row") {
          g.row = static_cast<int>(parse_long(val, lineno, "row"));
          if (*g.row < 0) throw ParseError(lineno, "row index must be >= 0");
        } else if (key == "wn") { wn = parse_double(val, lineno, "wn"); }
        else if (key == "ln") { ln = parse_double(val, lineno, "ln"); }
        else throw ParseError(lineno, "unknown gate field '" + std::string(key) + "'");
      }
      if (wn.has_value() != ln.has_value())
        throw ParseError(lineno, "geometry override requires both wn and ln");
      if (wn) g.geom_override = Geometry{*wn, *ln};

      for (const auto& net : g.outputs) {
        auto [it, inserted] = driver_line.emplace(net, lineno);
        if (!inserted)
          throw ParseError(lineno, "net '" + net + "' already driven at line " +
                                       std::to_string(it->second));
      }
      c.gates.push_back(std::move(g));
    } else {
      throw ParseError(lineno, "unknown record '" + std::string(rec) + "'");
    }
  }

  try {
    validate_circuit(c);
  } catch (const DomainError& e) {
    throw ParseError(0, e.what());
  }
  return c;
}

// Canonical text form: celldefs sorted by name, the input/output records,
// then gates sorted by id. parse(write(c)) reproduces the data model;
// write(parse(t)) is idempotent.
inline std::string write_netlist(const Circuit& c) {
  std::ostringstream os;
  std::vector<const CellDef*> cells;
  for (const auto& cd : c.cells) cells.push_back(&cd);
  std::sort(cells.begin(), cells.end(),
            [](const CellDef* a, const CellDef* b) { return a->name < b->name; });
  for (const CellDef* cd : cells) {
    os << "celldef " << cd->name << " inputs=" << cd->n_inputs
       << " fn=" << logic_fn_token(cd->fn) << " cl=" << format_double(cd->cl)
       << " k=" << format_double(cd->k) << " ipeak=" << format_double(cd->i_peak)
       << " ileak=" << format_double(cd->i_leak_ref)
       << " wn=" << format_double(cd->geom_n.w) << " ln=" << format_double(cd->geom_n.l)
       << '\n';
  }
  if (!c.primary_inputs.empty()) {
    os << "input";
    for (const auto& net : c.primary_inputs) os << ' ' << net;
    os << '\n';
  }
  if (!c.primary_outputs.empty()) {
    os << "output";
    for (const auto& net : c.primary_outputs) os << ' ' << net;
    os << '\n';
  }
  std::vector<const GateInstance*> gates;
  for (const auto& g : c.gates) gates.push_back(&g);
  std::sort(gates.begin(), gates.end(),
            [](const GateInstance* a, const GateInstance* b) { return a->id < b->id; });
  for (const GateInstance* g : gates) {
    os << "gate " << g->id << ' ' << g->cell << " in=";
    for (size_t i = 0; i < g->inputs.size(); ++i) os << (i ? "," : "") << g->inputs[i];
    os << " out=";
    for (size_t i = 0; i < g->outputs.size(); ++i) os << (i ? "," : "") << g->outputs[i];
    if (g->row) os << " row=" << *g->row;
    if (g->geom_override)
      os << " wn=" << format_double(g->geom_override->w)
         << " ln=" << format_double(g->geom_override->l);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Functional evaluation.

// assignment: primary-input net -> bit. Returns primary-output bits in
// declaration order.
inline std::vector<bool> evaluate(const Circuit& c,
                                  const std::map<std::string, bool>& assignment) {
  std::map<std::string, bool, std::less<>> value;
  for (const auto& net : c.primary_inputs) {
    auto it = assignment.find(net);
    if (it == assignment.end())
      throw DomainError("missing input bit for primary input '" + net + "'");
    value[net] = it->second;
  }
  auto order = detail::topo_gate_order(c);
  for (size_t gi : order) {
    const GateInstance& g = c.gates[gi];
    const CellDef* cd = c.find_cell(g.cell);
    std::vector<bool> in;
    in.reserve(g.inputs.size());
    for (const auto& net : g.inputs) {
      auto it = value.find(net);
      if (it == value.end())
        throw DomainError("gate '" + g.id + "': undriven input net '" + net + "'");
      in.push_back(it->second);
    }
    switch (cd->fn) {
      case LogicFn::And2: value[g.outputs[0]] = in[0] && in[1]; break;
      case LogicFn::HaSum: value[g.outputs[0]] = in[0] != in[1]; break;
      case LogicFn::HaCarry: value[g.outputs[0]] = in[0] && in[1]; break;
      case LogicFn::FaSum: value[g.outputs[0]] = (in[0] != in[1]) != in[2]; break;
      case LogicFn::FaCarry:
        value[g.outputs[0]] = (in[0] && in[1]) || (in[2] && (in[0] != in[1]));
        break;
      case LogicFn::Buf: value[g.outputs[0]] = in[0]; break;
      case LogicFn::Ha:
        value[g.outputs[0]] = in[0] != in[1];
        value[g.outputs[1]] = in[0] && in[1];
        break;
      case LogicFn::Fa:
        value[g.outputs[0]] = (in[0] != in[1]) != in[2];
        value[g.outputs[1]] = (in[0] && in[1]) || (in[2] && (in[0] != in[1]));
        break;
    }
  }
  std::vector<bool> out;
  out.reserve(c.primary_outputs.size());
  for (const auto& net : c.primary_outputs) {
    auto it = value.find(net);
    if (it == value.end())
      throw DomainError("primary output net '" + net + "' has no driver");
    out.push_back(it->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Row assignment: gates ordered by (topological level, id) and cut into
// n_rows contiguous, count-balanced buckets. Deterministic.

inline RowAssignment assign_rows(const Circuit& c, int n_rows) {
  if (n_rows < 1) throw DomainError("row count must be >= 1");
  auto levels = detail::topo_levels(c);
  std::vector<size_t> idx(c.gates.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (levels[a] != levels[b]) return levels[a] < levels[b];
    return c.gates[a].id < c.gates[b].id;
  });
  RowAssignment ra;
  ra.n_rows = n_rows;
  const size_t n = idx.size();
  for (int r = 0; r < n_rows; ++r) {
    size_t lo = n * static_cast<size_t>(r) / n_rows;
    size_t hi = n * static_cast<size_t>(r + 1) / n_rows;
    for (size_t i = lo; i < hi; ++i) ra.mapping[c.gates[idx[i]].id] = r;
  }
  return ra;
}

// ---------------------------------------------------------------------------
// Multiple-channel-length/width overrides: widen the named speed-critical
// gates, lengthen everything else for leakage control. Factors of 1 leave a
// gate untouched.

inline Circuit apply_mccmos(const Circuit& c, const std::set<std::string>& critical_gates,
                            double widen, double lengthen) {
  if (!(widen >= 1.0) || !(lengthen >= 1.0))
    throw DomainError("mccmos factors must be >= 1");
  Circuit out = c;
  for (auto& g : out.gates) {
    const CellDef* cd = out.find_cell(g.cell);
    if (!cd) throw DomainError("gate '" + g.id + "' references undefined cell '" + g.cell + "'");
    Geometry base = g.geom_override ? *g.geom_override : cd->geom_n;
    if (critical_gates.count(g.id)) {
      if (widen != 1.0) g.geom_override = Geometry{base.w * widen, base.l};
    } else {
      if (lengthen != 1.0) g.geom_override = Geometry{base.w, base.l * lengthen};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Calibrated cell library and the 4x4 array multiplier.

// Cell data is calibrated jointly: cl/k reproduce the flow's reference
// ungated critical-path delay (2.3836e-10 s through the multiplier), ipeak
// the conventional sizing behaviour, and ileak the ungated standby power
// (see README for the derivation).
inline std::vector<CellDef> default_cell_library() {
  std::vector<CellDef> lib(3);
  lib[0] = CellDef{"AND2", 2, 2.0190909090909092e-14, 0.0015956418423022603,
                   8.0e-7, 1.41e-8, Geometry{135e-9, 45e-9}, LogicFn::And2};
  lib[1] = CellDef{"HA", 2, 4.0381818181818184e-14, 0.0021275224564030137,
                   1.6e-6, 2.12e-8, Geometry{270e-9, 45e-9}, LogicFn::Ha};
  lib[2] = CellDef{"FA", 3, 5.0477272727272731e-14, 0.0019945523028778254,
                   2.8e-5, 2.82e-8, Geometry{405e-9, 45e-9}, LogicFn::Fa};
  return lib;
}

// Ripple-carry array multiplier: 16 AND2 partial products, three rows of
// adders (2HA+2FA, 1HA+3FA, 1HA+3FA), A[3:0] * B[3:0] -> P[7:0]. Gates are
// tagged with seven balanced rows.
inline Circuit generate_multiplier4x4(const std::vector<CellDef>& lib) {
  Circuit c;
  c.cells = lib;
  for (const char* name : {"AND2", "HA", "FA"})
    if (!c.find_cell(name))
      throw DomainError(std::string("cell library is missing '") + name + "'");

  for (int i = 0; i < 4; ++i) c.primary_inputs.push_back("a" + std::to_string(i));
  for (int i = 0; i < 4; ++i) c.primary_inputs.push_back("b" + std::to_string(i));
  for (int i = 0; i < 8; ++i) c.primary_outputs.push_back("p" + std::to_string(i));

  auto add_gate = [&](std::string id, std::string cell, std::vector<std::string> in,
                      std::vector<std::string> out) {
    c.gates.push_back(GateInstance{std::move(id), std::move(cell), std::move(in),
                                   std::move(out), std::nullopt, std::nullopt});
  };

  // partial products; and<i><j> computes a<i> & b<j>
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::string out = (i == 0 && j == 0) ? "p0" : "pp" + std::to_string(i) + std::to_string(j);
      add_gate("and" + std::to_string(i) + std::to_string(j), "AND2",
               {"a" + std::to_string(i), "b" + std::to_string(j)}, {out});
    }

  // stage 1: rows B0 and B1
  add_gate("ha1", "HA", {"pp10", "pp01"}, {"p1", "c1_2"});
  add_gate("fa1", "FA", {"pp20", "pp11", "c1_2"}, {"s1_2", "c1_3"});
  add_gate("fa2", "FA", {"pp30", "pp21", "c1_3"}, {"s1_3", "c1_4"});
  add_gate("ha2", "HA", {"pp31", "c1_4"}, {"s1_4", "c1_5"});
  // stage 2: row B2
  add_gate("ha3", "HA", {"s1_2", "pp02"}, {"p2", "c2_3"});
  add_gate("fa3", "FA", {"s1_3", "pp12", "c2_3"}, {"s2_3", "c2_4"});
  add_gate("fa4", "FA", {"s1_4", "pp22", "c2_4"}, {"s2_4", "c2_5"});
  add_gate("fa5", "FA", {"c1_5", "pp32", "c2_5"}, {"s2_5", "c2_6"});
  // stage 3: row B3
  add_gate("ha4", "HA", {"s2_3", "pp03"}, {"p3", "c3_4"});
  add_gate("fa6", "FA", {"s2_4", "pp13", "c3_4"}, {"p4", "c3_5"});
  add_gate("fa7", "FA", {"s2_5", "pp23", "c3_5"}, {"p5", "c3_6"});
  add_gate("fa8", "FA", {"c2_6", "pp33", "c3_6"}, {"p6", "p7"});

  validate_circuit(c);
  RowAssignment ra = assign_rows(c, 7);
  for (auto& g : c.gates) g.row = ra.mapping.at(g.id);
  return c;
}

}  // namespace pglab
