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
#include <queue>
#include <set>

#include "errors.hpp"
#include "logic.hpp"

namespace minihls::logic {

namespace {

constexpr std::pair<GateType, const char*> kGateNames[] = {
    {GateType::And, "and"},   {GateType::Or, "or"},   {GateType::Not, "not"},   {GateType::Xor, "xor"},
    {GateType::Nand, "nand"}, {GateType::Nor, "nor"}, {GateType::Xnor, "xnor"},
};

// Hands out net names that collide neither with each other nor with a set of
// reserved names.
class NameAllocator {
 public:
  void reserve(const std::string& name) { used_.insert(name); }
  std::string take(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (unsigned i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
};

}  // namespace

const char* gate_type_name(GateType type) {
  for (const auto& [t, n] : kGateNames)
    if (t == type) return n;
  return "?";
}

std::optional<GateType> gate_type_from_name(std::string_view name) {
  for (const auto& [t, n] : kGateNames)
    if (name == n) return t;
  return std::nullopt;
}

NetId GateNetlist::add_input(std::string name) {
  auto id = static_cast<NetId>(nets.size());
  nets.push_back({std::move(name), NetKind::Input});
  inputs.push_back(id);
  return id;
}

NetId GateNetlist::add_wire(std::string name) {
  auto id = static_cast<NetId>(nets.size());
  nets.push_back({std::move(name), NetKind::Wire});
  return id;
}

NetId GateNetlist::const0() {
  for (NetId i = 0; i < nets.size(); ++i)
    if (nets[i].kind == NetKind::Const0) return i;
  auto id = static_cast<NetId>(nets.size());
  nets.push_back({"const0", NetKind::Const0});
  return id;
}

NetId GateNetlist::const1() {
  for (NetId i = 0; i < nets.size(); ++i)
    if (nets[i].kind == NetKind::Const1) return i;
  auto id = static_cast<NetId>(nets.size());
  nets.push_back({"const1", NetKind::Const1});
  return id;
}

NetId GateNetlist::add_gate(GateType type, std::vector<NetId> ins, NetId output) {
  gates.push_back({type, std::move(ins), output});
  return output;
}

std::optional<NetId> GateNetlist::find_net(std::string_view name) const {
  for (NetId i = 0; i < nets.size(); ++i)
    if (nets[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::string> GateNetlist::input_names() const {
  std::vector<std::string> out;
  for (NetId i : inputs) out.push_back(nets[i].name);
  return out;
}

std::vector<std::string> GateNetlist::output_names() const {
  std::vector<std::string> out;
  for (const auto& o : outputs) out.push_back(o.name);
  return out;
}

size_t GateNetlist::count(GateType type) const {
  return static_cast<size_t>(std::count_if(gates.begin(), gates.end(), [type](const Gate& g) { return g.type == type; }));
}

void validate(const GateNetlist& nl) {
  std::set<std::string> names;
  for (const auto& n : nl.nets)
    if (n.name.empty() || !names.insert(n.name).second) throw NetlistError("duplicate or empty net name '" + n.name + "'");
  std::vector<int> drivers(nl.nets.size(), 0);
  for (NetId i = 0; i < nl.nets.size(); ++i)
    if (nl.nets[i].kind != NetKind::Wire) drivers[i] = 1;
  for (NetId i : nl.inputs) {
    if (i >= nl.nets.size() || nl.nets[i].kind != NetKind::Input) throw NetlistError("bad primary input");
  }
  for (const auto& g : nl.gates) {
    if (g.output >= nl.nets.size()) throw NetlistError("gate output out of range");
    for (NetId i : g.inputs)
      if (i >= nl.nets.size()) throw NetlistError("gate input out of range");
    if (g.type == GateType::Not ? g.inputs.size() != 1 : g.inputs.empty())
      throw NetlistError(std::string("bad input count on ") + gate_type_name(g.type) + " gate driving '" +
                         nl.nets[g.output].name + "'");
    if (++drivers[g.output] > 1) throw NetlistError("net '" + nl.nets[g.output].name + "' has more than one driver");
  }
  for (NetId i = 0; i < nl.nets.size(); ++i)
    if (drivers[i] == 0) throw NetlistError("net '" + nl.nets[i].name + "' has no driver");
  std::set<std::string> ports;
  for (NetId i : nl.inputs) ports.insert(nl.nets[i].name);
  for (const auto& o : nl.outputs) {
    if (o.net >= nl.nets.size()) throw NetlistError("output '" + o.name + "' names a missing net");
    if (!ports.insert(o.name).second) throw NetlistError("duplicate port name '" + o.name + "'");
    auto same = nl.find_net(o.name);
    if (same && *same != o.net) throw NetlistError("output '" + o.name + "' clashes with a different net");
  }
  (void)topo_gate_order(nl);
}

std::vector<size_t> topo_gate_order(const GateNetlist& nl) {
  std::vector<int> driver(nl.nets.size(), -1);
  for (size_t i = 0; i < nl.gates.size(); ++i) driver[nl.gates[i].output] = static_cast<int>(i);
  std::vector<unsigned> pending(nl.gates.size(), 0);
  std::vector<std::vector<size_t>> users(nl.gates.size());
  for (size_t i = 0; i < nl.gates.size(); ++i)
    for (NetId in : nl.gates[i].inputs)
      if (driver[in] >= 0) {
        ++pending[i];
        users[static_cast<size_t>(driver[in])].push_back(i);
      }
  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t i = 0; i < nl.gates.size(); ++i)
    if (pending[i] == 0) ready.push(i);
  std::vector<size_t> order;
  while (!ready.empty()) {
    size_t g = ready.top();
    ready.pop();
    order.push_back(g);
    for (size_t u : users[g])
      if (--pending[u] == 0) ready.push(u);
  }
  if (order.size() != nl.gates.size()) throw NetlistError("netlist has a combinational cycle");
  return order;
}

std::vector<uint64_t> eval_words(const GateNetlist& nl, const std::vector<uint64_t>& input_words) {
  if (input_words.size() != nl.inputs.size()) throw InputError("wrong number of input words");
  std::vector<uint64_t> v(nl.nets.size(), 0);
  for (NetId i = 0; i < nl.nets.size(); ++i)
    if (nl.nets[i].kind == NetKind::Const1) v[i] = ~uint64_t{0};
  for (size_t i = 0; i < nl.inputs.size(); ++i) v[nl.inputs[i]] = input_words[i];
  for (size_t gi : topo_gate_order(nl)) {
    const Gate& g = nl.gates[gi];
    uint64_t acc = v[g.inputs[0]];
    for (size_t k = 1; k < g.inputs.size(); ++k) {
      uint64_t x = v[g.inputs[k]];
      switch (g.type) {
        case GateType::And:
        case GateType::Nand: acc &= x; break;
        case GateType::Or:
        case GateType::Nor: acc |= x; break;
        case GateType::Xor:
        case GateType::Xnor: acc ^= x; break;
        case GateType::Not: break;
      }
    }
    if (g.type == GateType::Not || g.type == GateType::Nand || g.type == GateType::Nor || g.type == GateType::Xnor)
      acc = ~acc;
    v[g.output] = acc;
  }
  std::vector<uint64_t> out;
  for (const auto& o : nl.outputs) out.push_back(v[o.net]);
  return out;
}

std::map<std::string, bool> eval_netlist(const GateNetlist& nl, const std::map<std::string, bool>& assignment) {
  std::vector<uint64_t> words;
  for (NetId i : nl.inputs) {
    auto it = assignment.find(nl.nets[i].name);
    if (it == assignment.end()) throw InputError("no value for input '" + nl.nets[i].name + "'");
    words.push_back(it->second ? 1 : 0);
  }
  auto out = eval_words(nl, words);
  std::map<std::string, bool> result;
  for (size_t i = 0; i < nl.outputs.size(); ++i) result[nl.outputs[i].name] = out[i] & 1;
  return result;
}

// AOI construction ---------------------------------------------------------------

GateNetlist sop_to_aoi_netlist(const std::vector<SopCover>& covers, const std::vector<std::string>& inputs,
                               const std::vector<std::string>& outputs) {
  if (covers.size() != outputs.size()) throw InputError("one cover per output is required");
  GateNetlist nl;
  NameAllocator names;
  for (const auto& n : inputs) names.reserve(n);
  for (const auto& n : outputs) names.reserve(n);
  for (const auto& n : inputs) nl.add_input(n);
  const auto n = static_cast<unsigned>(inputs.size());

  std::vector<std::optional<NetId>> inverted(n);
  auto literal = [&](unsigned i, bool positive) -> NetId {
    if (positive) return nl.inputs[i];
    if (!inverted[i]) {
      NetId w = nl.add_wire(names.take(inputs[i] + "_n"));
      nl.add_gate(GateType::Not, {nl.inputs[i]}, w);
      inverted[i] = w;
    }
    return *inverted[i];
  };

  for (size_t o = 0; o < outputs.size(); ++o) {
    const SopCover& cover = covers[o];
    const std::string& out = outputs[o];
    if (cover.empty()) {
      nl.add_output(out, nl.const0());
      continue;
    }
    if (std::any_of(cover.begin(), cover.end(), [](const Implicant& i) { return i.care == 0; })) {
      nl.add_output(out, nl.const1());
      continue;
    }
    std::vector<NetId> terms;
    for (size_t p = 0; p < cover.size(); ++p) {
      const Implicant& imp = cover[p];
      std::vector<NetId> lits;
      for (unsigned i = 0; i < n; ++i) {
        uint32_t bit = uint32_t{1} << (n - 1 - i);
        if (imp.care & bit) lits.push_back(literal(i, (imp.values & bit) != 0));
      }
      if (lits.size() == 1) {
        terms.push_back(lits.front());
        continue;
      }
      std::string net_name = cover.size() == 1 ? out : names.take(out + "_p" + std::to_string(p + 1));
      NetId w = nl.add_wire(net_name);
      nl.add_gate(GateType::And, std::move(lits), w);
      terms.push_back(w);
    }
    if (terms.size() == 1) {
      nl.add_output(out, terms.front());
      continue;
    }
    NetId root = nl.add_wire(out);
    nl.add_gate(GateType::Or, std::move(terms), root);
    nl.add_output(out, root);
  }
  return nl;
}

GateNetlist sop_to_aoi_netlist(const SopCover& cover, const std::vector<std::string>& inputs, const std::string& output) {
  return sop_to_aoi_netlist(std::vector<SopCover>{cover}, inputs, {output});
}

// Rewriting ------------------------------------------------------------------------

namespace {

// Copies a netlist gate by gate. Each original net maps to a net of the new
// netlist; a gate's final net keeps the original name.
class Rewriter {
 public:
  explicit Rewriter(const GateNetlist& src) : src_(src), map_(src.nets.size()) {
    for (const auto& n : src.nets) names_.reserve(n.name);
    for (const auto& o : src.outputs) names_.reserve(o.name);
    for (NetId i : src.inputs) map_[i] = dst_.add_input(src.nets[i].name);
    for (NetId i = 0; i < src.nets.size(); ++i) {
      if (src.nets[i].kind == NetKind::Const0) map_[i] = dst_.const0();
      if (src.nets[i].kind == NetKind::Const1) map_[i] = dst_.const1();
    }
  }

  template <typename Fn>
  GateNetlist run(Fn&& rewrite_gate) {
    for (size_t gi : topo_gate_order(src_)) {
      const Gate& g = src_.gates[gi];
      current_name_ = src_.nets[g.output].name;
      std::vector<NetId> ins;
      for (NetId i : g.inputs) ins.push_back(*map_[i]);
      NetId result = rewrite_gate(g.type, ins);
      map_[g.output] = result;
    }
    for (const auto& o : src_.outputs) dst_.add_output(o.name, *map_[o.net]);
    sweep();
    finish_names();
    return std::move(dst_);
  }

  // New intermediate gate.
  NetId emit(GateType type, std::vector<NetId> ins) {
    NetId w = dst_.add_wire(names_.take(current_name_ + "_t"));
    dst_.add_gate(type, std::move(ins), w);
    return w;
  }

  // NAND-based inverter that cancels against an inverter emitted earlier.
  NetId nand_inverter(NetId a) {
    if (auto it = inverted_.find(a); it != inverted_.end()) return it->second;
    NetId w = emit(GateType::Nand, {a, a});
    inverted_[w] = a;
    return w;
  }

 private:
  // Drops gates that no primary output depends on.
  void sweep() {
    std::vector<bool> live(dst_.nets.size(), false);
    std::vector<std::optional<size_t>> driver(dst_.nets.size());
    for (size_t gi = 0; gi < dst_.gates.size(); ++gi) driver[dst_.gates[gi].output] = gi;
    std::vector<NetId> stack;
    for (const auto& o : dst_.outputs) stack.push_back(o.net);
    while (!stack.empty()) {
      NetId n = stack.back();
      stack.pop_back();
      if (live[n]) continue;
      live[n] = true;
      if (driver[n])
        for (NetId i : dst_.gates[*driver[n]].inputs) stack.push_back(i);
    }
    bool dead = false;
    for (size_t gi = 0; gi < dst_.gates.size(); ++gi) dead = dead || !live[dst_.gates[gi].output];
    if (!dead) return;

    GateNetlist out;
    std::vector<std::optional<NetId>> remap(dst_.nets.size());
    for (NetId i : dst_.inputs) remap[i] = out.add_input(dst_.nets[i].name);
    for (NetId i = 0; i < dst_.nets.size(); ++i) {
      if (remap[i] || !live[i]) continue;
      switch (dst_.nets[i].kind) {
        case NetKind::Const0: remap[i] = out.const0(); break;
        case NetKind::Const1: remap[i] = out.const1(); break;
        default: remap[i] = out.add_wire(dst_.nets[i].name); break;
      }
    }
    for (const auto& g : dst_.gates) {
      if (!live[g.output]) continue;
      std::vector<NetId> ins;
      for (NetId i : g.inputs) ins.push_back(*remap[i]);
      out.add_gate(g.type, std::move(ins), *remap[g.output]);
    }
    for (const auto& o : dst_.outputs) out.add_output(o.name, *remap[o.net]);
    for (auto& m : map_)
      if (m) m = remap[*m];
    dst_ = std::move(out);
  }

  // The net that finally stands for each original gate output takes over the
  // original name when it is a fresh intermediate.
  void finish_names() {
    std::set<NetId> renamed;
    for (size_t gi = 0; gi < src_.gates.size(); ++gi) {
      NetId orig = src_.gates[gi].output;
      if (!map_[orig]) continue;
      NetId mapped = *map_[orig];
      if (dst_.nets[mapped].kind != NetKind::Wire || renamed.count(mapped)) continue;
      const std::string& want = src_.nets[orig].name;
      if (dst_.find_net(want)) continue;
      dst_.nets[mapped].name = want;
      renamed.insert(mapped);
    }
  }

  const GateNetlist& src_;
  GateNetlist dst_;
  std::vector<std::optional<NetId>> map_;
  std::map<NetId, NetId> inverted_;
  NameAllocator names_;
  std::string current_name_;
};

template <typename Combine>
NetId balanced(std::vector<NetId> ins, Combine&& combine) {
  while (ins.size() > 1) {
    std::vector<NetId> next;
    for (size_t i = 0; i + 1 < ins.size(); i += 2) next.push_back(combine(ins[i], ins[i + 1]));
    if (ins.size() % 2) next.push_back(ins.back());
    ins = std::move(next);
  }
  return ins.front();
}

}  // namespace

GateNetlist map_to_library(const GateNetlist& netlist, MapTarget target) {
  validate(netlist);
  Rewriter rw(netlist);
  if (target == MapTarget::Nand2) {
    auto nand = [&](NetId a, NetId b) { return rw.emit(GateType::Nand, {a, b}); };
    auto inv = [&](NetId a) { return rw.nand_inverter(a); };
    auto and2 = [&](NetId a, NetId b) { return inv(nand(a, b)); };
    auto or2 = [&](NetId a, NetId b) { return nand(inv(a), inv(b)); };
    auto xor2 = [&](NetId a, NetId b) {
      NetId t = nand(a, b);
      return nand(nand(a, t), nand(b, t));
    };
    return rw.run([&](GateType type, const std::vector<NetId>& ins) -> NetId {
      switch (type) {
        case GateType::Not: return inv(ins[0]);
        case GateType::And: return balanced(ins, and2);
        case GateType::Or: return balanced(ins, or2);
        case GateType::Xor: return balanced(ins, xor2);
        case GateType::Nand:
          if (ins.size() == 2) return nand(ins[0], ins[1]);
          return inv(balanced(ins, and2));
        case GateType::Nor: return inv(balanced(ins, or2));
        case GateType::Xnor: return inv(balanced(ins, xor2));
      }
      return ins[0];
    });
  }
  auto gate = [&](GateType t, std::vector<NetId> ins) { return rw.emit(t, std::move(ins)); };
  auto inv = [&](NetId a) { return gate(GateType::Not, {a}); };
  auto xor2 = [&](NetId a, NetId b) {
    return gate(GateType::Or, {gate(GateType::And, {a, inv(b)}), gate(GateType::And, {inv(a), b})});
  };
  return rw.run([&](GateType type, const std::vector<NetId>& ins) -> NetId {
    switch (type) {
      case GateType::Not: return inv(ins[0]);
      case GateType::And: return ins.size() == 1 ? ins[0] : gate(GateType::And, ins);
      case GateType::Or: return ins.size() == 1 ? ins[0] : gate(GateType::Or, ins);
      case GateType::Xor: return balanced(ins, xor2);
      case GateType::Nand: return inv(ins.size() == 1 ? ins[0] : gate(GateType::And, ins));
      case GateType::Nor: return inv(ins.size() == 1 ? ins[0] : gate(GateType::Or, ins));
      case GateType::Xnor: return inv(balanced(ins, xor2));
    }
    return ins[0];
  });
}

GateNetlist split_fanin(const GateNetlist& netlist) {
  validate(netlist);
  Rewriter rw(netlist);
  return rw.run([&](GateType type, const std::vector<NetId>& ins) -> NetId {
    if (type == GateType::Not) return rw.emit(type, ins);
    GateType base = type;
    bool inverting = false;
    if (type == GateType::Nand) { base = GateType::And; inverting = true; }
    if (type == GateType::Nor) { base = GateType::Or; inverting = true; }
    if (type == GateType::Xnor) { base = GateType::Xor; inverting = true; }
    if (ins.size() == 1) return inverting ? rw.emit(GateType::Not, ins) : ins[0];
    if (ins.size() == 2) return rw.emit(type, ins);
    // Balanced tree of the base operator over all inputs except the last
    // pair's root, which keeps the original (possibly inverting) type.
    std::vector<NetId> level = ins;
    while (level.size() > 2) {
      std::vector<NetId> next;
      for (size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(rw.emit(base, {level[i], level[i + 1]}));
      if (level.size() % 2) next.push_back(level.back());
      level = std::move(next);
    }
    return rw.emit(type, {level[0], level[1]});
  });
}

// Equivalence ------------------------------------------------------------------------

namespace {

// Word of row bits for input `i` (of n) over rows [base, base + 64).
uint64_t row_pattern(unsigned i, unsigned n, uint64_t base) {
  uint64_t w = 0;
  for (unsigned j = 0; j < 64; ++j)
    if (((base + j) >> (n - 1 - i)) & 1) w |= uint64_t{1} << j;
  return w;
}

template <typename Reference>
EquivalenceResult compare(const GateNetlist& a, const std::vector<std::string>& in_names,
                          const std::vector<std::string>& out_names, Reference&& reference) {
  const auto n = static_cast<unsigned>(in_names.size());
  if (n > kMaxEquivalenceInputs)
    throw SizeError("equivalence checking supports at most " + std::to_string(kMaxEquivalenceInputs) + " inputs");
  // Map a's port order onto the reference order.
  auto a_in = a.input_names();
  auto a_out = a.output_names();
  std::vector<size_t> in_pos, out_pos;
  for (const auto& name : in_names) in_pos.push_back(static_cast<size_t>(std::find(a_in.begin(), a_in.end(), name) - a_in.begin()));
  for (const auto& name : out_names) out_pos.push_back(static_cast<size_t>(std::find(a_out.begin(), a_out.end(), name) - a_out.begin()));

  uint64_t rows = uint64_t{1} << n;
  for (uint64_t base = 0; base < rows; base += 64) {
    uint64_t valid = rows - base >= 64 ? ~uint64_t{0} : (uint64_t{1} << (rows - base)) - 1;
    std::vector<uint64_t> words(n);
    for (unsigned i = 0; i < n; ++i) words[i] = row_pattern(i, n, base);
    std::vector<uint64_t> a_words(n);
    for (unsigned i = 0; i < n; ++i) a_words[in_pos[i]] = words[i];
    auto got = eval_words(a, a_words);
    auto want = reference(words, base);
    uint64_t diff = 0;
    for (size_t o = 0; o < out_names.size(); ++o) diff |= (got[out_pos[o]] ^ want[o]) & valid;
    if (!diff) continue;
    unsigned j = static_cast<unsigned>(__builtin_ctzll(diff));
    uint64_t row = base + j;
    EquivalenceResult r;
    r.equivalent = false;
    for (size_t i = 0; i < a_in.size(); ++i) {
      size_t ref = static_cast<size_t>(std::find(in_names.begin(), in_names.end(), a_in[i]) - in_names.begin());
      r.counterexample.push_back((row >> (n - 1 - ref)) & 1);
    }
    for (size_t o = 0; o < out_names.size(); ++o)
      if (((got[out_pos[o]] ^ want[o]) >> j) & 1) {
        r.output = out_names[o];
        break;
      }
    return r;
  }
  return {};
}

void require_same_ports(std::vector<std::string> a, std::vector<std::string> b, const char* what) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw NetlistError(std::string("compared designs have different ") + what);
}

}  // namespace

EquivalenceResult check_equivalence(const GateNetlist& a, const GateNetlist& b) {
  require_same_ports(a.input_names(), b.input_names(), "inputs");
  require_same_ports(a.output_names(), b.output_names(), "outputs");
  // Rows follow a's input order so counterexamples are lexicographic in it.
  auto in_names = a.input_names();
  auto out_names = a.output_names();
  auto b_in = b.input_names();
  auto b_out = b.output_names();
  return compare(a, in_names, out_names, [&](const std::vector<uint64_t>& words, uint64_t) {
    std::vector<uint64_t> bw(words.size());
    for (size_t i = 0; i < in_names.size(); ++i)
      bw[static_cast<size_t>(std::find(b_in.begin(), b_in.end(), in_names[i]) - b_in.begin())] = words[i];
    auto got = eval_words(b, bw);
    std::vector<uint64_t> ordered;
    for (const auto& name : out_names)
      ordered.push_back(got[static_cast<size_t>(std::find(b_out.begin(), b_out.end(), name) - b_out.begin())]);
    return ordered;
  });
}

EquivalenceResult check_equivalence(const GateNetlist& a, const TruthTable& table) {
  require_same_ports(a.input_names(), table.inputs, "inputs");
  require_same_ports(a.output_names(), table.outputs, "outputs");
  return compare(a, table.inputs, table.outputs, [&](const std::vector<uint64_t>&, uint64_t base) {
    std::vector<uint64_t> want;
    for (size_t o = 0; o < table.outputs.size(); ++o) {
      uint64_t w = 0;
      for (uint32_t m : table.minterms[o])
        if (m >= base && m < base + 64) w |= uint64_t{1} << (m - base);
      want.push_back(w);
    }
    return want;
  });
}

}  // namespace minihls::logic
