// Copyright 2026 The minihls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "emit.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace minihls::emit {

using logic::GateNetlist;
using logic::GateType;
using logic::NetId;
using logic::NetKind;

namespace {

const std::set<std::string> kVerilogReserved = {
    "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1", "case", "casex", "casez", "cell",
    "cmos", "config", "deassign", "default", "defparam", "design", "disable", "edge", "else", "end", "endcase",
    "endconfig", "endfunction", "endgenerate", "endmodule", "endprimitive", "endspecify", "endtable", "endtask",
    "event", "for", "force", "forever", "fork", "function", "generate", "genvar", "highz0", "highz1", "if", "ifnone",
    "incdir", "include", "initial", "inout", "input", "instance", "integer", "join", "large", "liblist", "library",
    "localparam", "macromodule", "medium", "module", "nand", "negedge", "nmos", "nor", "noshowcancelled", "not",
    "notif0", "notif1", "or", "output", "parameter", "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown",
    "pullup", "pulsestyle_onevent", "pulsestyle_ondetect", "rcmos", "real", "realtime", "reg", "release", "repeat",
    "rnmos", "rpmos", "rtran", "rtranif0", "rtranif1", "scalared", "showcancelled", "signed", "small", "specify",
    "specparam", "strong0", "strong1", "supply0", "supply1", "table", "task", "time", "tran", "tranif0", "tranif1",
    "tri", "tri0", "tri1", "triand", "trior", "trireg", "unsigned", "use", "uwire", "vectored", "wait", "wand",
    "weak0", "weak1", "while", "wire", "wor", "xnor", "xor"};

const std::set<std::string> kVhdlReserved = {
    "abs", "access", "after", "alias", "all", "and", "architecture", "array", "assert", "attribute", "begin", "block",
    "body", "buffer", "bus", "case", "component", "configuration", "constant", "disconnect", "downto", "else",
    "elsif", "end", "entity", "exit", "file", "for", "function", "generate", "generic", "group", "guarded", "if",
    "impure", "in", "inertial", "inout", "is", "label", "library", "linkage", "literal", "loop", "map", "mod", "nand",
    "new", "next", "nor", "not", "null", "of", "on", "open", "or", "others", "out", "package", "port", "postponed",
    "procedure", "process", "pure", "range", "record", "register", "reject", "rem", "report", "return", "rol", "ror",
    "select", "severity", "signal", "shared", "sla", "sll", "sra", "srl", "subtype", "then", "to", "transport",
    "type", "unaffected", "units", "until", "use", "variable", "wait", "when", "while", "with", "xnor", "xor",
    // names the emitter itself introduces
    "bit", "structural", "and2", "or2", "exor2", "exnor2", "nand2", "nor2", "inv", "x", "y", "o"};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string hash_hex(uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string version_string() {
  return std::string(kToolName) + " " + kToolVersion + " (report-json/" + std::to_string(kReportFormat) +
         ", netlist-json/" + std::to_string(kNetlistFormat) + ", design-json/" + std::to_string(kDesignFormat) +
         ", pla/" + std::to_string(kPlaFormat) + ")";
}

uint64_t fnv1a(std::string_view text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

NameTable::NameTable(Hdl hdl) : hdl_(hdl) {}

std::string NameTable::key(const std::string& id) const { return hdl_ == Hdl::Vhdl ? lower(id) : id; }

std::string NameTable::legalize(const std::string& name) const {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (hdl_ == Hdl::Vhdl) {
    std::string collapsed;
    for (char c : out)
      if (!(c == '_' && !collapsed.empty() && collapsed.back() == '_')) collapsed += c;
    while (!collapsed.empty() && collapsed.front() == '_') collapsed.erase(collapsed.begin());
    while (!collapsed.empty() && collapsed.back() == '_') collapsed.pop_back();
    out = collapsed;
  }
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "n" + out;
  const auto& reserved = hdl_ == Hdl::Verilog ? kVerilogReserved : kVhdlReserved;
  if (reserved.count(key(out))) out += hdl_ == Hdl::Verilog ? "_" : "_s";
  return out;
}

std::string NameTable::claim(const std::string& name) {
  std::string base = legalize(name);
  std::string candidate = base;
  for (unsigned i = 1; used_.count(key(candidate)); ++i) candidate = base + "_" + std::to_string(i);
  used_.insert(key(candidate));
  return candidate;
}

std::string NameTable::get(const std::string& name) {
  auto it = assigned_.find(name);
  if (it != assigned_.end()) return it->second;
  std::string id = claim(name);
  assigned_[name] = id;
  return id;
}

// JSON -------------------------------------------------------------------------------

std::string netlist_to_json(const GateNetlist& nl, const std::string& name) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format"] = "minihls-netlist/" + std::to_string(kNetlistFormat);
  doc["module"] = name;
  doc["inputs"] = nl.input_names();
  ordered_json outs = ordered_json::array();
  for (const auto& o : nl.outputs) {
    ordered_json j;
    j["name"] = o.name;
    j["net"] = nl.nets[o.net].name;
    outs.push_back(j);
  }
  doc["outputs"] = outs;
  ordered_json gates = ordered_json::array();
  size_t index = 0;
  for (size_t gi : logic::topo_gate_order(nl)) {
    const auto& g = nl.gates[gi];
    ordered_json j;
    j["name"] = "Gate" + std::to_string(++index);
    j["type"] = logic::gate_type_name(g.type);
    ordered_json ins = ordered_json::array();
    for (NetId i : g.inputs) ins.push_back(nl.nets[i].name);
    j["inputs"] = ins;
    j["output"] = nl.nets[g.output].name;
    gates.push_back(j);
  }
  doc["gates"] = gates;
  return doc.dump(2) + "\n";
}

// Verilog gate netlist ----------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

std::string emit_verilog_netlist(const GateNetlist& nl, const std::string& module_name) {
  logic::validate(nl);
  NameTable names(Hdl::Verilog);
  std::string module_id = NameTable(Hdl::Verilog).claim(module_name);  // separate namespace
  auto net_ref = [&](NetId id) -> std::string {
    switch (nl.nets[id].kind) {
      case NetKind::Const0: return "1'b0";
      case NetKind::Const1: return "1'b1";
      default: return names.get(nl.nets[id].name);
    }
  };

  std::vector<std::string> ins, outs, ports;
  for (NetId i : nl.inputs) ins.push_back(names.get(nl.nets[i].name));
  for (const auto& o : nl.outputs) outs.push_back(names.get(o.name));
  ports = ins;
  ports.insert(ports.end(), outs.begin(), outs.end());

  std::set<std::string> port_set(ports.begin(), ports.end());
  std::vector<std::string> wires;
  for (NetId i = 0; i < nl.nets.size(); ++i) {
    if (nl.nets[i].kind != NetKind::Wire) continue;
    std::string id = names.get(nl.nets[i].name);
    if (!port_set.count(id)) wires.push_back(id);
  }

  std::ostringstream os;
  os << "// Generated by " << kToolName << " " << kToolVersion << "; input hash "
     << hash_hex(fnv1a(netlist_to_json(nl, module_name))) << "\n";
  if (ports.empty()) os << "module " << module_id << ";\n";
  else os << "module " << module_id << " (" << join(ports, ", ") << ");\n";
  if (!ins.empty()) os << "  input " << join(ins, ", ") << ";\n";
  if (!outs.empty()) os << "  output " << join(outs, ", ") << ";\n";
  if (!wires.empty()) os << "  wire " << join(wires, ", ") << ";\n";
  os << "\n";
  size_t index = 0;
  for (size_t gi : logic::topo_gate_order(nl)) {
    const auto& g = nl.gates[gi];
    os << "  " << logic::gate_type_name(g.type) << " Gate" << ++index << " (" << net_ref(g.output);
    for (NetId i : g.inputs) os << ", " << net_ref(i);
    os << ");\n";
  }
  for (const auto& o : nl.outputs) {
    if (nl.nets[o.net].kind == NetKind::Wire && nl.nets[o.net].name == o.name) continue;
    os << "  assign " << names.get(o.name) << " = " << net_ref(o.net) << ";\n";
  }
  os << "endmodule\n";
  return os.str();
}

// Structural VHDL ----------------------------------------------------------------------

namespace {

const char* vhdl_component(GateType t) {
  switch (t) {
    case GateType::And: return "AND2";
    case GateType::Or: return "OR2";
    case GateType::Xor: return "EXOR2";
    case GateType::Nand: return "NAND2";
    case GateType::Nor: return "NOR2";
    case GateType::Xnor: return "EXNOR2";
    case GateType::Not: return "INV";
  }
  return "?";
}

}  // namespace

std::string emit_vhdl_structural(const GateNetlist& nl, const std::string& entity_name) {
  logic::validate(nl);
  for (const auto& g : nl.gates) {
    size_t want = g.type == GateType::Not ? 1 : 2;
    if (g.inputs.size() != want)
      throw FanInError(std::string(logic::gate_type_name(g.type)) + " gate driving '" + nl.nets[g.output].name +
                       "' has " + std::to_string(g.inputs.size()) + " inputs; structural VHDL needs " +
                       std::to_string(want) + " (split the fan-in first)");
  }

  NameTable names(Hdl::Vhdl);
  std::string entity = names.claim(entity_name);
  std::vector<std::string> ins, outs;
  for (NetId i : nl.inputs) ins.push_back(names.get(nl.nets[i].name));
  for (const auto& o : nl.outputs) outs.push_back(names.claim(o.name));

  // Output ports cannot be read inside the architecture, so every gate-driven
  // net gets a signal unless it only drives one output port.
  std::vector<int> readers(nl.nets.size(), 0);
  for (const auto& g : nl.gates)
    for (NetId i : g.inputs) ++readers[i];
  for (const auto& o : nl.outputs) ++readers[o.net];
  std::map<NetId, std::string> port_driven;  // net -> output port identifier
  for (size_t k = 0; k < nl.outputs.size(); ++k) {
    NetId n = nl.outputs[k].net;
    if (nl.nets[n].kind == NetKind::Wire && readers[n] == 1 && nl.nets[n].name == nl.outputs[k].name)
      port_driven[n] = outs[k];
  }
  std::vector<std::string> signals;
  auto net_ref = [&](NetId id) -> std::string {
    switch (nl.nets[id].kind) {
      case NetKind::Const0: return "'0'";
      case NetKind::Const1: return "'1'";
      default: break;
    }
    if (auto it = port_driven.find(id); it != port_driven.end()) return it->second;
    return names.get(nl.nets[id].name);
  };
  for (NetId i = 0; i < nl.nets.size(); ++i)
    if (nl.nets[i].kind == NetKind::Wire && !port_driven.count(i)) signals.push_back(net_ref(i));

  std::set<std::string> used_components;
  for (const auto& g : nl.gates) used_components.insert(vhdl_component(g.type));

  std::ostringstream os;
  os << "-- Generated by " << kToolName << " " << kToolVersion << "; input hash "
     << hash_hex(fnv1a(netlist_to_json(nl, entity_name))) << "\n";
  os << "entity " << entity << " is\n";
  if (!ins.empty() || !outs.empty()) {
    os << "  port (";
    std::vector<std::string> clauses;
    if (!ins.empty()) clauses.push_back(join(ins, ", ") + " : in bit");
    if (!outs.empty()) clauses.push_back(join(outs, ", ") + " : out bit");
    for (size_t i = 0; i < clauses.size(); ++i) os << "\n    " << clauses[i] << (i + 1 < clauses.size() ? ";" : ");");
    os << "\n";
  }
  os << "end " << entity << ";\n\n";
  os << "architecture structural of " << entity << " is\n";
  for (const auto& c : used_components) {
    if (c == "INV") os << "  component INV port (x : in bit; o : out bit); end component;\n";
    else os << "  component " << c << " port (x, y : in bit; o : out bit); end component;\n";
  }
  if (!signals.empty()) os << "  signal " << join(signals, ", ") << " : bit;\n";
  os << "begin\n";
  size_t index = 0;
  for (size_t gi : logic::topo_gate_order(nl)) {
    const auto& g = nl.gates[gi];
    os << "  Gate" << ++index << " : " << vhdl_component(g.type) << " port map (";
    for (NetId i : g.inputs) os << net_ref(i) << ", ";
    os << net_ref(g.output) << ");\n";
  }
  for (size_t k = 0; k < nl.outputs.size(); ++k) {
    NetId n = nl.outputs[k].net;
    if (port_driven.count(n) && port_driven[n] == outs[k]) continue;
    os << "  " << outs[k] << " <= " << net_ref(n) << ";\n";
  }
  os << "end structural;\n";
  return os.str();
}

// Reader for the emitted Verilog subset --------------------------------------------------

namespace {

std::vector<std::string> split_idents(std::string s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

GateNetlist read_verilog_netlist(std::string_view text) {
  std::vector<std::string> statements;
  {
    std::string clean;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      auto c = line.find("//");
      if (c != std::string::npos) line.erase(c);
      clean += line + " ";
    }
    std::string cur;
    for (char c : clean) {
      if (c == ';') {
        statements.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    cur.erase(std::remove_if(cur.begin(), cur.end(), [](unsigned char c) { return std::isspace(c); }), cur.end());
    if (cur != "endmodule") throw NetlistError("expected 'endmodule' at the end of the netlist");
  }

  std::vector<std::string> inputs, outputs;
  struct GateLine {
    GateType type;
    std::vector<std::string> pins;
  };
  std::vector<GateLine> gates;
  std::map<std::string, std::string> assigns;
  bool saw_module = false;
  for (std::string st : statements) {
    std::istringstream ss(st);
    std::string head;
    ss >> head;
    if (head.empty()) continue;
    std::string rest;
    std::getline(ss, rest);
    if (head == "module") {
      saw_module = true;
      continue;
    }
    if (head == "input") {
      for (auto& n : split_idents(rest)) inputs.push_back(n);
      continue;
    }
    if (head == "output") {
      for (auto& n : split_idents(rest)) outputs.push_back(n);
      continue;
    }
    if (head == "wire") continue;
    if (head == "assign") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) throw NetlistError("malformed assign");
      auto lhs = split_idents(rest.substr(0, eq));
      auto rhs = split_idents(rest.substr(eq + 1));
      if (lhs.size() != 1 || rhs.size() != 1) throw NetlistError("malformed assign");
      assigns[lhs[0]] = rhs[0];
      continue;
    }
    auto type = logic::gate_type_from_name(head);
    if (!type) throw NetlistError("unsupported statement '" + head + "'");
    auto open = rest.find('(');
    auto close = rest.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw NetlistError("malformed gate instantiation");
    auto pins = split_idents(rest.substr(open + 1, close - open - 1));
    if (pins.size() < 2) throw NetlistError("gate instantiation needs an output and an input");
    gates.push_back({*type, pins});
  }
  if (!saw_module) throw NetlistError("no module header");

  GateNetlist nl;
  std::map<std::string, NetId> nets;
  for (const auto& n : inputs) nets[n] = nl.add_input(n);
  for (const auto& g : gates)
    if (!nets.count(g.pins[0])) nets[g.pins[0]] = nl.add_wire(g.pins[0]);
  auto ref = [&](const std::string& n) -> NetId {
    if (n == "1'b0") return nl.const0();
    if (n == "1'b1") return nl.const1();
    auto it = nets.find(n);
    if (it == nets.end()) throw NetlistError("net '" + n + "' has no driver");
    return it->second;
  };
  for (const auto& g : gates) {
    std::vector<NetId> ins;
    for (size_t i = 1; i < g.pins.size(); ++i) ins.push_back(ref(g.pins[i]));
    nl.add_gate(g.type, std::move(ins), nets.at(g.pins[0]));
  }
  for (const auto& o : outputs) {
    auto a = assigns.find(o);
    nl.add_output(o, a != assigns.end() ? ref(a->second) : ref(o));
  }
  logic::validate(nl);
  return nl;
}

}  // namespace minihls::emit
