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

#include <map>
#include <set>

#include "dfg.hpp"
#include "errors.hpp"
#include "frontend.hpp"
#include "logic.hpp"

namespace minihls::logic {

using dfg::NodeKind;

GateNetlist lower_to_gates(const frontend::Program& program) {
  for (const auto& p : program.ports)
    if (p.width != 1) throw SizeError("gate-level lowering needs 1-bit variables; '" + p.name + "' is " + std::to_string(p.width) + " bits");
  for (const auto& v : program.locals)
    if (v.width != 1) throw SizeError("gate-level lowering needs 1-bit variables; '" + v.name + "' is " + std::to_string(v.width) + " bits");

  auto widths = frontend::check_widths(program);
  dfg::Dfg g = dfg::build_dfg(program, widths);

  GateNetlist nl;
  std::vector<std::optional<NetId>> net(g.nodes.size());
  // Operation results that are the final value of an output port take the
  // port's name, so the gate instantiation reads like a hand-written one.
  std::map<dfg::NodeId, std::string> preferred;
  std::set<std::string> taken;
  for (const auto& p : program.ports) taken.insert(p.name);
  for (const auto& [name, out] : g.outputs) {
    auto src = g.operands(out).front().producer;
    if (g.is_op(src) && !preferred.count(src)) preferred[src] = name;
  }

  for (dfg::NodeId id : dfg::topo_order(g)) {
    const auto& n = g.node(id);
    if (n.kind == NodeKind::Input) {
      net[id] = nl.add_input(n.name);
      continue;
    }
    if (n.kind == NodeKind::Output) continue;
    if (n.kind == NodeKind::Const) {
      net[id] = (n.value & 1) ? nl.const1() : nl.const0();
      continue;
    }
    auto ops = g.operands(id);
    std::vector<NetId> ins;
    for (const auto& e : ops) ins.push_back(*net[e.producer]);
    if (n.kind == NodeKind::Shl || n.kind == NodeKind::Shr) {
      net[id] = g.node(ops[1].producer).value == 0 ? ins[0] : nl.const0();
      continue;
    }
    GateType type = GateType::And;
    switch (n.kind) {
      case NodeKind::Add:
      case NodeKind::Sub:
      case NodeKind::Xor: type = GateType::Xor; break;
      case NodeKind::Mul:
      case NodeKind::And: type = GateType::And; break;
      case NodeKind::Or: type = GateType::Or; break;
      case NodeKind::Not: type = GateType::Not; break;
      default: break;
    }
    std::string name;
    if (auto it = preferred.find(id); it != preferred.end()) name = it->second;
    else {
      name = "n" + std::to_string(id);
      while (taken.count(name)) name += "_";
    }
    taken.insert(name);
    net[id] = nl.add_gate(type, std::move(ins), nl.add_wire(name));
  }
  for (const auto& [name, out] : g.outputs) nl.add_output(name, *net[g.operands(out).front().producer]);
  validate(nl);
  return nl;
}

}  // namespace minihls::logic
