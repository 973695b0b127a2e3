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

#include "hls.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "json.hpp"

namespace minihls::hls {

using dfg::Edge;

// Library ----------------------------------------------------------------------

ResourceLibrary ResourceLibrary::defaults() {
  ResourceLibrary lib;
  lib.set(NodeKind::Add, {"adder", 1, 2.0});
  lib.set(NodeKind::Sub, {"subtractor", 1, 2.0});
  lib.set(NodeKind::Mul, {"multiplier", 1, 8.0});
  lib.set(NodeKind::And, {"and", 1, 1.0});
  lib.set(NodeKind::Or, {"or", 1, 1.0});
  lib.set(NodeKind::Xor, {"xor", 1, 1.0});
  lib.set(NodeKind::Not, {"inverter", 1, 0.5});
  lib.set(NodeKind::Shl, {"shifter-left", 1, 1.5});
  lib.set(NodeKind::Shr, {"shifter-right", 1, 1.5});
  return lib;
}

const ResourceSpec& ResourceLibrary::spec(NodeKind kind) const {
  auto it = specs_.find(kind);
  if (it == specs_.end())
    throw AllocationError(std::string("resource library has no entry for '") + dfg::kind_name(kind) + "'");
  return it->second;
}

unsigned ResourceLibrary::latency(NodeKind kind) const {
  if (!dfg::is_operation(kind)) return 0;
  return spec(kind).latency;
}

dfg::LatencyMap ResourceLibrary::latencies() const {
  dfg::LatencyMap m;
  for (const auto& [k, s] : specs_) m[k] = s.latency;
  return m;
}

void ResourceLibrary::check_covers(const Dfg& g) const {
  for (const auto& n : g.nodes)
    if (dfg::is_operation(n.kind) && !has(n.kind))
      throw AllocationError(std::string("resource library has no entry for '") + dfg::kind_name(n.kind) + "'");
}

namespace {

std::vector<std::pair<NodeKind, unsigned>> parse_kind_list(std::string_view text, const char* what) {
  std::vector<std::pair<NodeKind, unsigned>> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError(std::string("malformed ") + what + " entry '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::string_view val = item.substr(eq + 1);
    auto kind = dfg::kind_from_name(key);
    if (!kind || !dfg::is_operation(*kind))
      throw InputError(std::string("unknown resource kind '") + std::string(key) + "'");
    if (val.empty() || val.size() > 9 || val.find_first_not_of("0123456789") != std::string_view::npos)
      throw InputError(std::string("bad ") + what + " value '" + std::string(val) + "' for '" + std::string(key) + "'");
    for (const auto& [k, v] : out)
      if (k == *kind) throw InputError(std::string("duplicate ") + what + " entry for '" + std::string(key) + "'");
    out.emplace_back(*kind, static_cast<unsigned>(std::stoul(std::string(val))));
  }
  return out;
}

}  // namespace

void ResourceLibrary::apply_latencies(std::string_view text) {
  for (auto [kind, lat] : parse_kind_list(text, "latency")) {
    if (lat < 1) throw InputError(std::string("latency of '") + dfg::kind_name(kind) + "' must be >= 1");
    auto it = specs_.find(kind);
    if (it == specs_.end()) specs_[kind] = {dfg::kind_name(kind), lat, 1.0};
    else it->second.latency = lat;
  }
}

Allocation parse_allocation(std::string_view text) {
  Allocation alloc;
  for (auto [kind, count] : parse_kind_list(text, "resource")) alloc[kind] = count;
  return alloc;
}

std::string format_allocation(const Allocation& alloc) {
  std::string out;
  for (NodeKind k : dfg::operation_kinds()) {
    auto it = alloc.find(k);
    if (it == alloc.end()) continue;
    if (!out.empty()) out += ',';
    out += std::string(dfg::kind_name(k)) + "=" + std::to_string(it->second);
  }
  return out;
}

void check_allocation(const Dfg& g, const Allocation& alloc) {
  for (const auto& n : g.nodes) {
    if (!dfg::is_operation(n.kind)) continue;
    auto it = alloc.find(n.kind);
    if (it == alloc.end() || it->second == 0)
      throw AllocationError(std::string("no '") + dfg::kind_name(n.kind) + "' instance allocated");
  }
}

// Scheduling -------------------------------------------------------------------

namespace {

struct Adjacency {
  std::vector<std::vector<NodeId>> preds;  // operation predecessors only
  std::vector<std::vector<NodeId>> succs;  // operation successors only
};

Adjacency op_adjacency(const Dfg& g) {
  Adjacency a;
  a.preds.resize(g.nodes.size());
  a.succs.resize(g.nodes.size());
  for (const auto& e : g.edges) {
    if (g.is_op(e.producer) && g.is_op(e.consumer)) {
      a.preds[e.consumer].push_back(e.producer);
      a.succs[e.producer].push_back(e.consumer);
    }
  }
  return a;
}

unsigned schedule_end(const Dfg& g, const ResourceLibrary& lib, const Schedule& s) {
  unsigned end = 0;
  for (const auto& [n, t] : s.start) end = std::max(end, t + lib.latency(g.node(n).kind) - 1);
  return end;
}

}  // namespace

Schedule asap(const Dfg& g, const ResourceLibrary& lib) {
  lib.check_covers(g);
  Adjacency adj = op_adjacency(g);
  Schedule s;
  for (NodeId n : dfg::topo_order(g)) {
    if (!g.is_op(n)) continue;
    unsigned t = 1;
    for (NodeId p : adj.preds[n]) t = std::max(t, s.start.at(p) + lib.latency(g.node(p).kind));
    s.start[n] = t;
  }
  s.length = schedule_end(g, lib, s);
  return s;
}

Schedule alap(const Dfg& g, const ResourceLibrary& lib, unsigned deadline) {
  lib.check_covers(g);
  auto cp = dfg::critical_path(g, lib.latencies());
  if (deadline < cp)
    throw DeadlineError("deadline " + std::to_string(deadline) + " is shorter than the critical path " +
                        std::to_string(cp));
  Adjacency adj = op_adjacency(g);
  auto order = dfg::topo_order(g);
  Schedule s;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId n = *it;
    if (!g.is_op(n)) continue;
    unsigned lat = lib.latency(g.node(n).kind);
    unsigned t = deadline + 1 - lat;
    for (NodeId c : adj.succs[n]) t = std::min(t, s.start.at(c) - lat);
    s.start[n] = t;
  }
  s.length = s.start.empty() ? 0 : deadline;
  return s;
}

std::map<NodeId, unsigned> mobility(const Schedule& early, const Schedule& late) {
  std::map<NodeId, unsigned> m;
  for (const auto& [n, t] : early.start) {
    unsigned l = late.start.at(n);
    m[n] = l >= t ? l - t : 0;
  }
  return m;
}

Schedule list_schedule(const Dfg& g, const ResourceLibrary& lib, const Allocation& alloc) {
  check_allocation(g, alloc);
  Schedule early = asap(g, lib);
  Schedule late = alap(g, lib, early.length);
  auto mob = mobility(early, late);
  Adjacency adj = op_adjacency(g);

  std::vector<NodeId> pending;
  for (const auto& n : g.nodes)
    if (dfg::is_operation(n.kind)) pending.push_back(n.id);

  Schedule s;
  // busy[kind][step] = operations of that kind executing in the step.
  std::map<NodeKind, std::map<unsigned, unsigned>> busy;
  for (unsigned t = 1; !pending.empty(); ++t) {
    std::vector<NodeId> ready;
    for (NodeId n : pending) {
      bool ok = true;
      for (NodeId p : adj.preds[n]) {
        auto it = s.start.find(p);
        if (it == s.start.end() || it->second + lib.latency(g.node(p).kind) > t) {
          ok = false;
          break;
        }
      }
      if (ok) ready.push_back(n);
    }
    std::sort(ready.begin(), ready.end(), [&](NodeId a, NodeId b) {
      return mob.at(a) != mob.at(b) ? mob.at(a) < mob.at(b) : a < b;
    });
    for (NodeId n : ready) {
      NodeKind k = g.node(n).kind;
      unsigned lat = lib.latency(k);
      auto& row = busy[k];
      bool fits = true;
      for (unsigned d = 0; d < lat && fits; ++d) fits = row[t + d] < alloc.at(k);
      if (!fits) continue;
      for (unsigned d = 0; d < lat; ++d) ++row[t + d];
      s.start[n] = t;
    }
    std::erase_if(pending, [&](NodeId n) { return s.start.count(n) != 0; });
  }
  s.length = schedule_end(g, lib, s);
  return s;
}

Allocation auto_allocate(const Dfg& g, const ResourceLibrary& lib) {
  Schedule s = asap(g, lib);
  std::map<NodeKind, std::map<unsigned, unsigned>> busy;
  for (const auto& [n, t] : s.start) {
    NodeKind k = g.node(n).kind;
    for (unsigned d = 0; d < lib.latency(k); ++d) ++busy[k][t + d];
  }
  Allocation alloc;
  for (const auto& [k, row] : busy) {
    unsigned peak = 0;
    for (const auto& [t, c] : row) peak = std::max(peak, c);
    alloc[k] = peak;
  }
  return alloc;
}

// Binding ----------------------------------------------------------------------

Interval execution_interval(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, NodeId n) {
  unsigned t = s.start.at(n);
  return {t, t + lib.latency(g.node(n).kind) - 1};
}

Binding bind_functional_units(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, const Allocation& alloc) {
  Binding b;
  std::map<NodeKind, std::vector<NodeId>> by_kind;
  for (const auto& [n, t] : s.start) by_kind[g.node(n).kind].push_back(n);
  for (auto& [kind, nodes] : by_kind) {
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId c) {
      return s.start.at(a) != s.start.at(c) ? s.start.at(a) < s.start.at(c) : a < c;
    });
    std::vector<unsigned> last_busy;  // per instance, last occupied step
    for (NodeId n : nodes) {
      Interval iv = execution_interval(g, s, lib, n);
      size_t slot = 0;
      while (slot < last_busy.size() && last_busy[slot] >= iv.birth) ++slot;
      if (slot == last_busy.size()) last_busy.push_back(0);
      last_busy[slot] = iv.death;
      b.fu_bind[n] = {kind, static_cast<unsigned>(slot + 1)};
    }
    auto it = alloc.find(kind);
    unsigned budget = it == alloc.end() ? 0 : it->second;
    if (last_busy.size() > budget)
      throw InfeasibleBinding(std::string("schedule needs ") + std::to_string(last_busy.size()) + " '" +
                              dfg::kind_name(kind) + "' instances but only " + std::to_string(budget) +
                              " are allocated");
  }
  return b;
}

Binding bind_registers(const Dfg& g, const Schedule& s, const ResourceLibrary& lib) {
  Binding b;
  unsigned out_step = s.length + 1;
  for (const auto& n : g.nodes) {
    if (n.kind != NodeKind::Input && !dfg::is_operation(n.kind)) continue;
    auto cons = g.consumers(n.id);
    if (cons.empty()) continue;
    unsigned birth = n.kind == NodeKind::Input ? 1 : s.start.at(n.id) + lib.latency(n.kind);
    unsigned death = 0;
    for (NodeId c : cons) death = std::max(death, g.is_op(c) ? s.start.at(c) : out_step);
    b.lifetimes[n.id] = {std::min(birth, death), death};
  }

  std::vector<NodeId> values;
  for (const auto& [n, iv] : b.lifetimes)
    if (g.is_op(n)) values.push_back(n);
  std::sort(values.begin(), values.end(), [&](NodeId a, NodeId c) {
    const auto& x = b.lifetimes.at(a);
    const auto& y = b.lifetimes.at(c);
    return x.birth != y.birth ? x.birth < y.birth : a < c;
  });
  std::vector<unsigned> last_death;
  for (NodeId n : values) {
    const Interval& iv = b.lifetimes.at(n);
    size_t slot = 0;
    while (slot < last_death.size() && last_death[slot] >= iv.birth) ++slot;
    if (slot == last_death.size()) last_death.push_back(0);
    last_death[slot] = iv.death;
    b.reg_bind[n] = static_cast<unsigned>(slot + 1);
  }
  b.register_count = static_cast<unsigned>(last_death.size());
  return b;
}

Binding bind(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, const Allocation& alloc) {
  Binding b = bind_functional_units(g, s, lib, alloc);
  Binding r = bind_registers(g, s, lib);
  b.reg_bind = std::move(r.reg_bind);
  b.lifetimes = std::move(r.lifetimes);
  b.register_count = r.register_count;
  return b;
}

// Audits -----------------------------------------------------------------------

std::vector<std::string> schedule_violations(const Dfg& g, const ResourceLibrary& lib, const Schedule& s,
                                             const Allocation* alloc) {
  std::vector<std::string> out;
  for (const auto& n : g.nodes) {
    if (dfg::is_operation(n.kind) && !s.start.count(n.id))
      out.push_back("operation " + std::to_string(n.id) + " is unscheduled");
  }
  if (!out.empty()) return out;
  for (const auto& e : g.edges) {
    if (!g.is_op(e.producer) || !g.is_op(e.consumer)) continue;
    unsigned ready = s.start.at(e.producer) + lib.latency(g.node(e.producer).kind);
    if (s.start.at(e.consumer) < ready)
      out.push_back("node " + std::to_string(e.consumer) + " starts before producer " + std::to_string(e.producer) +
                    " finishes");
  }
  for (const auto& [n, t] : s.start) {
    if (t < 1) out.push_back("node " + std::to_string(n) + " starts at step 0");
    if (t + lib.latency(g.node(n).kind) - 1 > s.length)
      out.push_back("node " + std::to_string(n) + " ends after the schedule length");
  }
  if (alloc) {
    std::map<std::pair<NodeKind, unsigned>, unsigned> busy;
    for (const auto& [n, t] : s.start) {
      NodeKind k = g.node(n).kind;
      for (unsigned d = 0; d < lib.latency(k); ++d) ++busy[{k, t + d}];
    }
    for (const auto& [key, count] : busy) {
      auto it = alloc->find(key.first);
      unsigned budget = it == alloc->end() ? 0 : it->second;
      if (count > budget)
        out.push_back(std::to_string(count) + " '" + dfg::kind_name(key.first) + "' operations in step " +
                      std::to_string(key.second) + " exceed the allocation of " + std::to_string(budget));
    }
  }
  return out;
}

std::vector<std::string> binding_violations(const Dfg& g, const ResourceLibrary& lib, const Schedule& s,
                                            const Binding& b) {
  std::vector<std::string> out;
  std::vector<NodeId> ops;
  for (const auto& [n, t] : s.start) ops.push_back(n);
  for (NodeId n : ops) {
    auto it = b.fu_bind.find(n);
    if (it == b.fu_bind.end()) out.push_back("operation " + std::to_string(n) + " is unbound");
    else if (it->second.kind != g.node(n).kind) out.push_back("operation " + std::to_string(n) + " bound to wrong kind");
  }
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j) {
      auto a = b.fu_bind.find(ops[i]);
      auto c = b.fu_bind.find(ops[j]);
      if (a == b.fu_bind.end() || c == b.fu_bind.end() || !(a->second == c->second)) continue;
      if (execution_interval(g, s, lib, ops[i]).overlaps(execution_interval(g, s, lib, ops[j])))
        out.push_back("operations " + std::to_string(ops[i]) + " and " + std::to_string(ops[j]) +
                      " overlap on one instance");
    }
  std::vector<std::pair<NodeId, unsigned>> regs(b.reg_bind.begin(), b.reg_bind.end());
  for (const auto& [n, r] : regs)
    if (!b.lifetimes.count(n)) out.push_back("register value " + std::to_string(n) + " has no lifetime");
  for (size_t i = 0; i < regs.size(); ++i)
    for (size_t j = i + 1; j < regs.size(); ++j) {
      if (regs[i].second != regs[j].second) continue;
      auto a = b.lifetimes.find(regs[i].first);
      auto c = b.lifetimes.find(regs[j].first);
      if (a == b.lifetimes.end() || c == b.lifetimes.end()) continue;
      if (a->second.overlaps(c->second))
        out.push_back("values " + std::to_string(regs[i].first) + " and " + std::to_string(regs[j].first) +
                      " overlap in register " + std::to_string(regs[i].second));
    }
  for (const auto& [n, iv] : b.lifetimes)
    if (g.is_op(n) && !b.reg_bind.count(n)) out.push_back("live value " + std::to_string(n) + " has no register");
  return out;
}

// Sources and cost -------------------------------------------------------------

namespace {

unsigned input_ordinal(const Dfg& g, NodeId id) {
  unsigned ord = 0;
  for (NodeId i = 0; i < id; ++i)
    if (g.nodes[i].kind == NodeKind::Input) ++ord;
  return ord;
}

uint64_t mask(unsigned bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

}  // namespace

Source operand_source(const Dfg& g, const Binding& b, const Edge& e) {
  const auto& p = g.node(e.producer);
  Source src;
  src.bits = e.bits;
  switch (p.kind) {
    case NodeKind::Input:
      src.kind = SourceKind::Input;
      src.index = input_ordinal(g, p.id);
      break;
    case NodeKind::Const:
      src.kind = SourceKind::Const;
      src.value = p.value & mask(e.bits);
      break;
    default:
      src.kind = SourceKind::Register;
      src.index = b.reg_bind.at(p.id);
      break;
  }
  return src;
}

CostReport estimate(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib) {
  CostReport r;
  r.latency = s.length;
  std::map<NodeKind, unsigned> peak;
  for (const auto& [n, inst] : b.fu_bind) peak[inst.kind] = std::max(peak[inst.kind], inst.instance);
  r.instances = peak;
  for (const auto& [k, count] : peak) r.area += count * lib.spec(k).area;
  r.registers = b.register_count;

  // Distinct sources per functional-unit operand port and per register.
  std::map<std::pair<FuInstance, unsigned>, std::vector<Source>> ports;
  std::map<unsigned, std::vector<Source>> reg_inputs;
  auto add = [](std::vector<Source>& v, const Source& src) {
    if (std::find(v.begin(), v.end(), src) == v.end()) v.push_back(src);
  };
  for (const auto& [n, inst] : b.fu_bind)
    for (const auto& e : g.operands(n)) add(ports[{inst, e.position}], operand_source(g, b, e));
  for (const auto& [n, reg] : b.reg_bind) {
    Source src;
    src.kind = SourceKind::Unit;
    src.unit = b.fu_bind.at(n);
    src.bits = g.node(n).width;
    add(reg_inputs[reg], src);
  }
  for (const auto& [k, v] : ports)
    if (v.size() > 1) r.mux_inputs += static_cast<unsigned>(v.size());
  for (const auto& [k, v] : reg_inputs)
    if (v.size() > 1) r.mux_inputs += static_cast<unsigned>(v.size());
  return r;
}

std::string report_json(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib) {
  using nlohmann::ordered_json;
  ordered_json steps = ordered_json::array();
  for (unsigned t = 1; t <= s.length; ++t) {
    ordered_json ops = ordered_json::array();
    for (const auto& [n, start] : s.start) {
      if (start != t) continue;
      ordered_json op;
      op["node"] = n;
      op["kind"] = dfg::kind_name(g.node(n).kind);
      op["instance"] = b.fu_bind.count(n) ? b.fu_bind.at(n).instance : 0;
      ops.push_back(op);
    }
    ordered_json step;
    step["step"] = t;
    step["ops"] = ops;
    steps.push_back(step);
  }
  std::map<unsigned, std::vector<NodeId>> by_reg;
  for (const auto& [n, r] : b.reg_bind) by_reg[r].push_back(n);
  ordered_json regs = ordered_json::array();
  for (const auto& [r, nodes] : by_reg) {
    unsigned width = 0;
    ordered_json values = ordered_json::array();
    for (NodeId n : nodes) {
      width = std::max(width, g.node(n).width);
      const auto& iv = b.lifetimes.at(n);
      ordered_json v;
      v["node"] = n;
      v["birth"] = iv.birth;
      v["death"] = iv.death;
      values.push_back(v);
    }
    ordered_json reg;
    reg["register"] = r;
    reg["width"] = width;
    reg["values"] = values;
    regs.push_back(reg);
  }
  (void)lib;
  ordered_json doc;
  doc["steps"] = steps;
  doc["registers"] = regs;
  doc["length"] = s.length;
  return doc.dump(2) + "\n";
}

std::string report_text(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib,
                        const Allocation& alloc) {
  std::ostringstream os;
  CostReport cost = estimate(g, s, b, lib);
  os << "allocation: " << format_allocation(alloc) << "\n";
  os << "schedule length: " << s.length << " step" << (s.length == 1 ? "" : "s") << "\n";
  for (unsigned t = 1; t <= s.length; ++t) {
    os << "  step " << t << ":";
    for (const auto& [n, start] : s.start) {
      if (start != t) continue;
      const auto& inst = b.fu_bind.at(n);
      os << " n" << n << "=" << dfg::kind_name(inst.kind) << inst.instance;
    }
    os << "\n";
  }
  os << "instances:";
  for (const auto& [k, c] : cost.instances) os << " " << dfg::kind_name(k) << "x" << c;
  os << "\nregisters: " << cost.registers << "\nmux inputs: " << cost.mux_inputs << "\narea: " << cost.area << "\n";
  return os.str();
}

}  // namespace minihls::hls
