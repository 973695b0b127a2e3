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

#include "rtl.hpp"

#include <algorithm>

namespace minihls::rtl {

using dfg::NodeId;
using dfg::NodeKind;

unsigned select_bits(size_t n) {
  unsigned bits = 1;
  while ((size_t{1} << bits) < n) ++bits;
  return bits;
}

namespace {

void add_source(Drive& d, const Source& s) {
  if (std::find(d.sources.begin(), d.sources.end(), s) == d.sources.end()) d.sources.push_back(s);
}

size_t unit_index(const Datapath& dp, const hls::FuInstance& inst) {
  for (size_t i = 0; i < dp.units.size(); ++i)
    if (dp.units[i].kind == inst.kind && dp.units[i].instance == inst.instance) return i;
  return dp.units.size();
}

Source register_source(const dfg::Dfg& g, const hls::Binding& b, NodeId n) {
  Source s;
  s.kind = SourceKind::Unit;
  s.unit = b.fu_bind.at(n);
  s.bits = g.node(n).width;
  return s;
}

int source_index(const Drive& d, const Source& s) {
  auto it = std::find(d.sources.begin(), d.sources.end(), s);
  return it == d.sources.end() ? -1 : static_cast<int>(it - d.sources.begin());
}

// Operations ordered by (start step, id).
std::vector<NodeId> ops_by_start(const hls::Schedule& s) {
  std::vector<NodeId> ops;
  for (const auto& [n, t] : s.start) ops.push_back(n);
  std::stable_sort(ops.begin(), ops.end(), [&](NodeId a, NodeId c) { return s.start.at(a) < s.start.at(c); });
  return ops;
}

}  // namespace

Datapath build_datapath(const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                        const hls::ResourceLibrary& lib) {
  Datapath dp;
  std::vector<hls::FuInstance> instances;
  for (const auto& [n, inst] : b.fu_bind)
    if (std::find(instances.begin(), instances.end(), inst) == instances.end()) instances.push_back(inst);
  std::sort(instances.begin(), instances.end());
  for (const auto& inst : instances) {
    FunctionalUnit u;
    u.kind = inst.kind;
    u.instance = inst.instance;
    u.latency = lib.latency(inst.kind);
    u.name = std::string(dfg::kind_name(inst.kind)) + std::to_string(inst.instance);
    u.width = 1;
    u.operands.resize(dfg::arity(inst.kind));
    dp.units.push_back(std::move(u));
  }

  auto ops = ops_by_start(s);
  for (NodeId n : ops) {
    auto& u = dp.units[unit_index(dp, b.fu_bind.at(n))];
    u.width = std::max(u.width, g.node(n).width);
    for (const auto& e : g.operands(n)) add_source(u.operands[e.position], hls::operand_source(g, b, e));
  }

  dp.registers.resize(b.register_count);
  for (unsigned r = 0; r < b.register_count; ++r) {
    dp.registers[r].index = r + 1;
    dp.registers[r].name = "r" + std::to_string(r + 1);
  }
  std::vector<NodeId> values;
  for (const auto& [n, r] : b.reg_bind) values.push_back(n);
  std::stable_sort(values.begin(), values.end(),
                   [&](NodeId a, NodeId c) { return b.lifetimes.at(a).birth < b.lifetimes.at(c).birth; });
  for (NodeId n : values) {
    auto& reg = dp.registers[b.reg_bind.at(n) - 1];
    reg.width = std::max(reg.width, g.node(n).width);
    add_source(reg.input, register_source(g, b, n));
  }

  auto attach_mux = [&](Drive& d, const std::string& name, unsigned width) {
    if (d.sources.size() < 2) return;
    d.mux = dp.muxes.size();
    dp.muxes.push_back({name, width, d.sources.size(), select_bits(d.sources.size())});
  };
  for (auto& u : dp.units)
    for (size_t p = 0; p < u.operands.size(); ++p)
      attach_mux(u.operands[p], u.name + "_in" + std::to_string(p), u.width);
  for (auto& reg : dp.registers) attach_mux(reg.input, reg.name + "_in", reg.width);

  for (const auto& n : g.nodes)
    if (n.kind == NodeKind::Input) dp.inputs.push_back({n.name, n.width, {}});
  for (const auto& [name, out] : g.outputs) {
    const dfg::Edge e = g.operands(out).front();
    dp.outputs.push_back({name, g.node(out).width, hls::operand_source(g, b, e)});
  }
  return dp;
}

ControllerFsm build_controller(const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                               const hls::ResourceLibrary& lib, const Datapath& dp) {
  ControllerFsm fsm;
  fsm.state_count = s.length + 1;
  fsm.state_bits = select_bits(fsm.state_count);
  ControlWord blank;
  blank.mux_select.assign(dp.muxes.size(), -1);
  blank.reg_enable.assign(dp.registers.size(), false);
  blank.unit_capture.assign(dp.units.size(), false);
  blank.unit_op.assign(dp.units.size(), -1);
  fsm.words.assign(fsm.state_count, blank);

  for (const auto& [n, start] : s.start) {
    size_t ui = unit_index(dp, b.fu_bind.at(n));
    const auto& u = dp.units[ui];
    ControlWord& w = fsm.words[start];
    w.unit_op[ui] = static_cast<int>(n);
    if (u.latency > 1) w.unit_capture[ui] = true;
    for (const auto& e : g.operands(n)) {
      const Drive& d = u.operands[e.position];
      if (d.mux) w.mux_select[*d.mux] = source_index(d, hls::operand_source(g, b, e));
    }
    auto reg = b.reg_bind.find(n);
    if (reg == b.reg_bind.end()) continue;
    unsigned done_step = start + lib.latency(g.node(n).kind) - 1;
    ControlWord& wr = fsm.words[done_step];
    const Register& r = dp.registers[reg->second - 1];
    wr.reg_enable[reg->second - 1] = true;
    if (r.input.mux) wr.mux_select[*r.input.mux] = source_index(r.input, register_source(g, b, n));
  }
  fsm.words[s.length].finish = true;
  return fsm;
}

RtlDesign build_design(const std::string& name, const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                       const hls::ResourceLibrary& lib) {
  RtlDesign d;
  d.name = name;
  d.length = s.length;
  d.datapath = build_datapath(g, s, b, lib);
  d.controller = build_controller(g, s, b, lib, d.datapath);
  return d;
}

RtlStats rtl_stats(const RtlDesign& d) {
  RtlStats st;
  st.functional_units = static_cast<unsigned>(d.datapath.units.size());
  st.registers = static_cast<unsigned>(d.datapath.registers.size());
  for (const auto& r : d.datapath.registers) st.register_bits += r.width;
  std::vector<bool> feeds_unit(d.datapath.registers.size(), false);
  for (const auto& u : d.datapath.units)
    for (const auto& drive : u.operands)
      for (const auto& src : drive.sources)
        if (src.kind == SourceKind::Register) feeds_unit[src.index - 1] = true;
  st.intermediate_registers = static_cast<unsigned>(std::count(feeds_unit.begin(), feeds_unit.end(), true));
  st.muxes = static_cast<unsigned>(d.datapath.muxes.size());
  for (const auto& m : d.datapath.muxes) st.mux_inputs += static_cast<unsigned>(m.input_count);
  st.states = d.controller.state_count;
  return st;
}

std::vector<std::string> design_violations(const RtlDesign& d) {
  std::vector<std::string> out;
  const auto& dp = d.datapath;
  for (const auto& m : dp.muxes) {
    if (m.input_count < 2) out.push_back("mux " + m.name + " has fewer than two inputs");
    if (m.select_width != select_bits(m.input_count)) out.push_back("mux " + m.name + " has a bad select width");
  }
  auto check_drive = [&](const Drive& dr, const std::string& where) {
    if (dr.sources.empty()) out.push_back(where + " is undriven");
    if ((dr.sources.size() > 1) != dr.mux.has_value()) out.push_back(where + " mux presence mismatch");
    if (dr.mux && dp.muxes.at(*dr.mux).input_count != dr.sources.size()) out.push_back(where + " mux arity mismatch");
    for (const auto& s : dr.sources)
      if (s.kind == SourceKind::Register && (s.index < 1 || s.index > dp.registers.size()))
        out.push_back(where + " reads a missing register");
  };
  for (const auto& u : dp.units)
    for (size_t p = 0; p < u.operands.size(); ++p) check_drive(u.operands[p], u.name + " operand " + std::to_string(p));
  for (const auto& r : dp.registers) check_drive(r.input, r.name + " input");
  if (d.controller.state_count != d.length + 1) out.push_back("state count differs from schedule length + 1");
  if (d.controller.words.size() != d.controller.state_count) out.push_back("control word count mismatch");
  if ((size_t{1} << d.controller.state_bits) < d.controller.state_count) out.push_back("state register too narrow");
  for (size_t k = 0; k < d.controller.words.size(); ++k) {
    const auto& w = d.controller.words[k];
    if (w.mux_select.size() != dp.muxes.size() || w.reg_enable.size() != dp.registers.size() ||
        w.unit_capture.size() != dp.units.size())
      out.push_back("control word " + std::to_string(k) + " has the wrong width");
    for (size_t m = 0; m < w.mux_select.size() && m < dp.muxes.size(); ++m)
      if (w.mux_select[m] >= static_cast<int>(dp.muxes[m].input_count))
        out.push_back("control word " + std::to_string(k) + " selects past the end of " + dp.muxes[m].name);
  }
  return out;
}

}  // namespace minihls::rtl
