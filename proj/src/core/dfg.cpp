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

#include "dfg.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "errors.hpp"

namespace minihls::dfg {

using frontend::Expr;
using frontend::ExprOp;
using frontend::Program;
using frontend::Stmt;
using frontend::StmtKind;

namespace {

struct KindInfo {
  NodeKind kind;
  const char* name;
};

constexpr KindInfo kKinds[] = {
    {NodeKind::Input, "input"}, {NodeKind::Const, "const"}, {NodeKind::Add, "add"}, {NodeKind::Sub, "sub"},
    {NodeKind::Mul, "mul"},     {NodeKind::And, "and"},     {NodeKind::Or, "or"},   {NodeKind::Xor, "xor"},
    {NodeKind::Not, "not"},     {NodeKind::Shl, "shl"},     {NodeKind::Shr, "shr"}, {NodeKind::Output, "output"},
};

NodeKind kind_of(ExprOp op) {
  switch (op) {
    case ExprOp::Add: return NodeKind::Add;
    case ExprOp::Sub: return NodeKind::Sub;
    case ExprOp::Mul: return NodeKind::Mul;
    case ExprOp::And: return NodeKind::And;
    case ExprOp::Or: return NodeKind::Or;
    case ExprOp::Xor: return NodeKind::Xor;
    case ExprOp::Not: return NodeKind::Not;
    case ExprOp::Shl: return NodeKind::Shl;
    case ExprOp::Shr: return NodeKind::Shr;
    case ExprOp::Const: return NodeKind::Const;
    case ExprOp::Var: break;
  }
  return NodeKind::Input;
}

// A variable's current value: node plus the number of meaningful low bits.
struct Value {
  NodeId node;
  unsigned bits;
};

class Builder {
 public:
  Builder(const Program& p, const frontend::WidthReport& w, const BuildOptions& o) : prog_(p), widths_(w), opts_(o) {}

  Dfg run() {
    for (const auto* port : prog_.inputs()) {
      NodeId id = add_node(NodeKind::Input, port->width);
      g_.nodes[id].name = port->name;
      env_[port->name] = {id, port->width};
    }

    // Assignments grouped by the cycle they execute in; within a cycle every
    // assignment reads the environment committed by earlier cycles.
    std::vector<std::pair<uint64_t, const Stmt*>> order;
    collect(prog_.body, 1, order);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < order.size();) {
      size_t j = i;
      std::vector<std::pair<std::string, Value>> pending;
      while (j < order.size() && order[j].first == order[i].first) {
        const Stmt* s = order[j].second;
        unsigned w = *prog_.width_of(s->target);
        Value v = build(s->expr);
        pending.emplace_back(s->target, Value{v.node, std::min(v.bits, w)});
        ++j;
      }
      for (auto& [name, v] : pending) env_[name] = v;
      i = j;
    }

    for (const auto* port : prog_.outputs()) {
      NodeId id = add_node(NodeKind::Output, port->width);
      g_.nodes[id].name = port->name;
      const Value& v = env_.at(port->name);
      g_.edges.push_back({v.node, id, 0, std::min(v.bits, port->width)});
      g_.outputs.emplace_back(port->name, id);
    }
    return std::move(g_);
  }

 private:
  NodeId add_node(NodeKind kind, unsigned width) {
    auto id = static_cast<NodeId>(g_.nodes.size());
    g_.nodes.push_back({id, kind, width, 0, {}});
    return id;
  }

  void collect(const Stmt& s, uint64_t start, std::vector<std::pair<uint64_t, const Stmt*>>& out) {
    switch (s.kind) {
      case StmtKind::Assign: out.emplace_back(start, &s); return;
      case StmtKind::Seq:
        for (const auto& c : s.children) {
          collect(c, start, out);
          start += frontend::source_cycles(c);
        }
        return;
      case StmtKind::Par:
        for (const auto& c : s.children) collect(c, start, out);
        return;
    }
  }

  void connect(Value operand, NodeId consumer, unsigned position, bool from_var) {
    unsigned bits = std::min(operand.bits, g_.nodes[consumer].width);
    g_.edges.push_back({operand.node, consumer, position, bits});
    if (from_var && g_.is_op(operand.node)) g_.cycle_barriers.emplace_back(operand.node, consumer);
  }

  Value build(const Expr& e) {
    unsigned w = widths_.at(&e);
    if (e.op == ExprOp::Var) return env_.at(e.name);
    if (e.op == ExprOp::Const) {
      NodeId id = add_node(NodeKind::Const, w);
      g_.nodes[id].value = e.value;
      return {id, w};
    }
    if (opts_.strength_reduce && e.op == ExprOp::Mul) {
      if (auto reduced = try_strength_reduce(e, w)) return *reduced;
    }
    std::vector<std::pair<Value, bool>> ops;
    for (const auto& o : e.operands) ops.emplace_back(build(o), o.op == ExprOp::Var);
    NodeId id = add_node(kind_of(e.op), w);
    for (unsigned i = 0; i < ops.size(); ++i) connect(ops[i].first, id, i, ops[i].second);
    return {id, w};
  }

  // Multiplication by a constant power of two (>= 2) becomes a left shift.
  std::optional<Value> try_strength_reduce(const Expr& e, unsigned w) {
    const Expr& lhs = e.operands[0];
    const Expr& rhs = e.operands[1];
    auto pow2 = [](const Expr& x) { return x.op == ExprOp::Const && x.value >= 2 && (x.value & (x.value - 1)) == 0; };
    const Expr* c = pow2(rhs) ? &rhs : (pow2(lhs) ? &lhs : nullptr);
    if (!c) return std::nullopt;
    const Expr& other = (c == &rhs) ? lhs : rhs;
    Value x = build(other);
    NodeId amount = add_node(NodeKind::Const, w);
    g_.nodes[amount].value = static_cast<uint64_t>(__builtin_ctzll(c->value));
    NodeId id = add_node(NodeKind::Shl, w);
    connect(x, id, 0, other.op == ExprOp::Var);
    connect({amount, w}, id, 1, false);
    return Value{id, w};
  }

  const Program& prog_;
  const frontend::WidthReport& widths_;
  const BuildOptions& opts_;
  Dfg g_;
  std::map<std::string, Value> env_;
};

}  // namespace

const char* kind_name(NodeKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

std::optional<NodeKind> kind_from_name(std::string_view name) {
  for (const auto& k : kKinds)
    if (name == k.name) return k.kind;
  return std::nullopt;
}

bool is_operation(NodeKind kind) {
  return kind != NodeKind::Input && kind != NodeKind::Const && kind != NodeKind::Output;
}

unsigned arity(NodeKind kind) {
  switch (kind) {
    case NodeKind::Input:
    case NodeKind::Const: return 0;
    case NodeKind::Not:
    case NodeKind::Output: return 1;
    default: return 2;
  }
}

const std::vector<NodeKind>& operation_kinds() {
  static const std::vector<NodeKind> kinds = {NodeKind::Add, NodeKind::Sub, NodeKind::Mul,
                                              NodeKind::And, NodeKind::Or,  NodeKind::Xor,
                                              NodeKind::Not, NodeKind::Shl, NodeKind::Shr};
  return kinds;
}

size_t Dfg::operation_count() const {
  return static_cast<size_t>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return is_operation(n.kind); }));
}

std::vector<Edge> Dfg::operands(NodeId id) const {
  std::vector<Edge> out;
  for (const auto& e : edges)
    if (e.consumer == id) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.position < b.position; });
  return out;
}

std::vector<NodeId> Dfg::consumers(NodeId id) const {
  std::vector<NodeId> out;
  for (const auto& e : edges)
    if (e.producer == id) out.push_back(e.consumer);
  return out;
}

Dfg build_dfg(const Program& program, const frontend::WidthReport& widths, const BuildOptions& options) {
  return Builder(program, widths, options).run();
}

void validate(const Dfg& g) {
  std::vector<std::vector<bool>> seen(g.nodes.size());
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i].id != i) throw NetlistError("node id mismatch at index " + std::to_string(i));
    seen[i].assign(arity(g.nodes[i].kind), false);
  }
  for (const auto& e : g.edges) {
    if (e.producer >= g.nodes.size() || e.consumer >= g.nodes.size())
      throw NetlistError("edge endpoint out of range");
    auto& slots = seen[e.consumer];
    if (e.position >= slots.size() || slots[e.position])
      throw NetlistError("bad operand position on node " + std::to_string(e.consumer));
    slots[e.position] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    for (bool b : seen[i])
      if (!b) throw NetlistError("node " + std::to_string(i) + " has an unconnected operand");
  for (const auto& [name, id] : g.outputs)
    if (id >= g.nodes.size() || g.nodes[id].kind != NodeKind::Output)
      throw NetlistError("output '" + name + "' is not mapped to an Output node");
  (void)topo_order(g);
}

std::vector<NodeId> topo_order(const Dfg& g) {
  std::vector<unsigned> indegree(g.nodes.size(), 0);
  std::vector<std::vector<NodeId>> succ(g.nodes.size());
  for (const auto& e : g.edges) {
    ++indegree[e.consumer];
    succ[e.producer].push_back(e.consumer);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId i = 0; i < g.nodes.size(); ++i)
    if (indegree[i] == 0) ready.push(i);
  std::vector<NodeId> order;
  order.reserve(g.nodes.size());
  while (!ready.empty()) {
    NodeId n = ready.top();
    ready.pop();
    order.push_back(n);
    for (NodeId s : succ[n])
      if (--indegree[s] == 0) ready.push(s);
  }
  if (order.size() != g.nodes.size()) throw CycleError("dataflow graph contains a cycle");
  return order;
}

uint64_t critical_path(const Dfg& g, const LatencyMap& latencies) {
  std::vector<uint64_t> finish(g.nodes.size(), 0);
  std::vector<std::vector<NodeId>> preds(g.nodes.size());
  for (const auto& e : g.edges) preds[e.consumer].push_back(e.producer);
  uint64_t longest = 0;
  for (NodeId n : topo_order(g)) {
    uint64_t ready = 0;
    for (NodeId p : preds[n]) ready = std::max(ready, finish[p]);
    uint64_t lat = 0;
    if (g.is_op(n)) {
      auto it = latencies.find(g.nodes[n].kind);
      lat = it == latencies.end() ? 1 : it->second;
    }
    finish[n] = ready + lat;
    longest = std::max(longest, finish[n]);
  }
  return longest;
}

std::string dfg_to_dot(const Dfg& g) {
  std::ostringstream os;
  os << "digraph dfg {\n";
  for (const auto& n : g.nodes) {
    os << "  n" << n.id << " [label=\"" << kind_name(n.kind);
    if (n.kind == NodeKind::Const) os << " " << n.value;
    if (!n.name.empty()) os << " " << n.name;
    os << " :" << n.width << "\"";
    if (n.kind == NodeKind::Input || n.kind == NodeKind::Output) os << ", shape=box";
    os << "];\n";
  }
  for (const auto& e : g.edges) os << "  n" << e.producer << " -> n" << e.consumer << " [label=\"" << e.position << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace minihls::dfg
