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

#include "testkit.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "frontend.hpp"

#ifndef MINIHLS_GOLDEN_DIR
#error "MINIHLS_GOLDEN_DIR must be defined"
#endif

namespace minihls::testkit {

namespace {

uint64_t mask(unsigned bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

class ProgramGen {
 public:
  ProgramGen(uint64_t seed, const ProgramShape& shape) : rng_(seed), shape_(shape) {}

  std::string run() {
    budget_ = 1 + static_cast<unsigned>(rng_.below(shape_.max_ops));
    unsigned n_in = 1 + static_cast<unsigned>(rng_.below(3));
    unsigned n_out = 1 + static_cast<unsigned>(rng_.below(2));
    unsigned n_loc = static_cast<unsigned>(rng_.below(3));
    std::ostringstream os;
    os << "module p" << rng_.below(1000) << "(";
    for (unsigned i = 0; i < n_in; ++i) {
      std::string name = "i" + std::to_string(i);
      widths_[name] = width();
      inputs_.push_back(name);
      os << (i ? ", " : "") << "in " << name << ": " << widths_[name];
    }
    for (unsigned i = 0; i < n_out; ++i) {
      std::string name = "o" + std::to_string(i);
      widths_[name] = width();
      outputs_.push_back(name);
      targets_.push_back(name);
      os << ", out " << name << ": " << widths_[name];
    }
    os << ") {\n";
    for (unsigned i = 0; i < n_loc; ++i) {
      std::string name = "t" + std::to_string(i);
      widths_[name] = width();
      targets_.push_back(name);
      if (rng_.below(2)) os << "  var " << name << ": " << widths_[name] << ";\n";
      else os << "  int " << widths_[name] << " " << name << ";\n";
    }

    uint64_t cycle = 0;
    unsigned items = 1 + static_cast<unsigned>(rng_.below(5));
    for (unsigned k = 0; k < items; ++k) {
      if (shape_.structured && rng_.below(3) == 0) {
        os << par_block(cycle, "  ");
      } else {
        os << "  " << assignment(pick_target({}), cycle) << "\n";
        ++cycle;
      }
    }
    for (const auto& o : outputs_) {
      if (first_write_.count(o)) continue;
      os << "  " << assignment(o, cycle) << "\n";
      ++cycle;
    }
    os << "}\n";
    return os.str();
  }

 private:
  unsigned width() { return 1 + static_cast<unsigned>(rng_.below(shape_.max_width)); }

  std::string pick_target(const std::set<std::string>& exclude) {
    std::vector<std::string> options;
    for (const auto& t : targets_)
      if (!exclude.count(t)) options.push_back(t);
    if (options.empty()) return "";
    return options[rng_.below(options.size())];
  }

  // Inputs, and variables first written before the current cycle.
  std::vector<std::string> readable() const {
    std::vector<std::string> out(inputs_.begin(), inputs_.end());
    for (const auto& [v, c] : first_write_)
      if (c < cycle_) out.push_back(v);
    return out;
  }

  std::string literal(uint64_t v) {
    switch (rng_.below(4)) {
      case 0: {
        std::ostringstream os;
        os << "0x" << std::hex << v;
        return os.str();
      }
      case 1: {
        std::string bits;
        for (uint64_t x = v; x; x >>= 1) bits.insert(bits.begin(), char('0' + (x & 1)));
        return "0b" + (bits.empty() ? std::string("0") : bits);
      }
      default: return std::to_string(v);
    }
  }

  std::string leaf(unsigned w) {
    auto vars = readable();
    if (!vars.empty() && rng_.below(4) != 0) return vars[rng_.below(vars.size())];
    return literal(rng_.below(mask(w) + 1 == 0 ? ~uint64_t{0} : mask(w) + 1));
  }

  std::string expr(unsigned w, unsigned depth) {
    if (budget_ == 0 || depth > 3 || rng_.below(4) == 0) return leaf(w);
    --budget_;
    switch (rng_.below(10)) {
      case 0: return "~" + wrap(expr(w, depth + 1));
      case 1:
      case 2: {
        uint64_t limit = std::min<uint64_t>(mask(w), w + 1);
        return wrap(expr(w, depth + 1)) + (rng_.below(2) ? " << " : " >> ") + literal(rng_.below(limit + 1));
      }
      default: {
        static const char* ops[] = {"+", "-", "*", "&", "|", "^", "+", "*"};
        return wrap(expr(w, depth + 1)) + " " + ops[rng_.below(8)] + " " + wrap(expr(w, depth + 1));
      }
    }
  }

  static std::string wrap(const std::string& e) {
    bool simple = e.find(' ') == std::string::npos && e[0] != '~';
    return simple ? e : "(" + e + ")";
  }

  std::string assignment(const std::string& target, uint64_t cycle) {
    cycle_ = cycle;
    std::string rhs = expr(widths_.at(target), 0);
    auto [it, fresh] = first_write_.emplace(target, cycle);
    if (!fresh) it->second = std::min(it->second, cycle);
    return target + " = " + rhs + ";";
  }

  std::string par_block(uint64_t& cycle, const std::string& indent) {
    std::ostringstream os;
    os << indent << "par {\n";
    std::set<std::string> taken;
    uint64_t longest = 0;
    unsigned branches = 2 + static_cast<unsigned>(rng_.below(2));
    for (unsigned b = 0; b < branches; ++b) {
      unsigned len = 1 + static_cast<unsigned>(rng_.below(2));
      std::vector<std::string> writes;
      for (unsigned i = 0; i < len; ++i) {
        std::string t = pick_target(taken);
        if (t.empty()) break;
        writes.push_back(t);
      }
      if (writes.empty()) break;
      for (const auto& t : writes) taken.insert(t);
      if (writes.size() == 1) {
        os << indent << "  " << assignment(writes[0], cycle) << "\n";
      } else {
        os << indent << "  seq {\n";
        for (size_t i = 0; i < writes.size(); ++i) {
          os << indent << "    " << assignment(writes[i], cycle + i) << "\n";
        }
        os << indent << "  }\n";
      }
      longest = std::max<uint64_t>(longest, writes.size());
    }
    os << indent << "}\n";
    cycle += std::max<uint64_t>(longest, 1);
    return os.str();
  }

  sim::SplitMix64 rng_;
  ProgramShape shape_;
  unsigned budget_ = 0;
  std::map<std::string, unsigned> widths_;
  std::vector<std::string> outputs_, targets_;
  std::vector<std::string> inputs_;
  uint64_t cycle_ = 0;
  std::map<std::string, uint64_t> first_write_;
};

}  // namespace

std::string random_program(uint64_t seed, const ProgramShape& shape) { return ProgramGen(seed, shape).run(); }

dfg::Dfg random_dag(sim::SplitMix64& rng, unsigned max_ops) {
  using dfg::NodeKind;
  static const NodeKind kinds[] = {NodeKind::Add, NodeKind::Mul, NodeKind::Sub, NodeKind::And,
                                   NodeKind::Add, NodeKind::Mul, NodeKind::Not};
  dfg::Dfg g;
  auto add_node = [&](NodeKind k, std::string name) {
    dfg::Node n;
    n.id = static_cast<dfg::NodeId>(g.nodes.size());
    n.kind = k;
    n.width = 8;
    n.name = std::move(name);
    g.nodes.push_back(n);
    return n.id;
  };
  unsigned n_in = 1 + static_cast<unsigned>(rng.below(3));
  std::vector<dfg::NodeId> pool;
  for (unsigned i = 0; i < n_in; ++i) pool.push_back(add_node(NodeKind::Input, "x" + std::to_string(i)));
  unsigned n_ops = 1 + static_cast<unsigned>(rng.below(max_ops));
  std::vector<int> uses(n_in + n_ops, 0);
  for (unsigned i = 0; i < n_ops; ++i) {
    NodeKind k = kinds[rng.below(std::size(kinds))];
    dfg::NodeId id = add_node(k, "");
    for (unsigned p = 0; p < dfg::arity(k); ++p) {
      // Prefer recent nodes so graphs get some depth.
      size_t span = std::min<size_t>(pool.size(), 4);
      dfg::NodeId src = rng.below(3) ? pool[pool.size() - 1 - rng.below(span)] : pool[rng.below(pool.size())];
      g.edges.push_back({src, id, p, 8});
      ++uses[src];
    }
    pool.push_back(id);
  }
  unsigned outs = 0;
  for (dfg::NodeId id = n_in; id < n_in + n_ops; ++id) {
    if (uses[id]) continue;
    dfg::NodeId o = add_node(NodeKind::Output, "y" + std::to_string(outs));
    g.edges.push_back({id, o, 0, 8});
    g.outputs.emplace_back("y" + std::to_string(outs++), o);
  }
  return g;
}

namespace {

struct OpGraph {
  std::vector<dfg::NodeId> ops;                     // topological
  std::map<dfg::NodeId, std::vector<dfg::NodeId>> preds, succs;
  std::map<dfg::NodeId, unsigned> lat;
};

OpGraph op_graph(const dfg::Dfg& g, const hls::ResourceLibrary& lib) {
  OpGraph og;
  for (const auto& n : g.nodes)
    if (dfg::is_operation(n.kind)) og.lat[n.id] = lib.spec(n.kind).latency;
  for (const auto& e : g.edges)
    if (og.lat.count(e.producer) && og.lat.count(e.consumer)) {
      og.preds[e.consumer].push_back(e.producer);
      og.succs[e.producer].push_back(e.consumer);
    }
  std::set<dfg::NodeId> seen;
  std::function<void(dfg::NodeId)> visit = [&](dfg::NodeId n) {
    if (!seen.insert(n).second) return;
    for (auto p : og.preds[n]) visit(p);
    og.ops.push_back(n);
  };
  for (const auto& [n, l] : og.lat) visit(n);
  return og;
}

}  // namespace

unsigned longest_path(const dfg::Dfg& g, const hls::ResourceLibrary& lib) {
  OpGraph og = op_graph(g, lib);
  std::map<dfg::NodeId, unsigned> finish;
  unsigned best = 0;
  for (auto n : og.ops) {
    unsigned ready = 0;
    for (auto p : og.preds[n]) ready = std::max(ready, finish[p]);
    finish[n] = ready + og.lat[n];
    best = std::max(best, finish[n]);
  }
  return best;
}

unsigned optimal_schedule_length(const dfg::Dfg& g, const hls::ResourceLibrary& lib, const hls::Allocation& alloc) {
  OpGraph og = op_graph(g, lib);
  if (og.ops.empty()) return 0;
  // tail[n]: steps from n's start to the end of the longest path through it.
  std::map<dfg::NodeId, unsigned> tail;
  for (auto it = og.ops.rbegin(); it != og.ops.rend(); ++it) {
    unsigned after = 0;
    for (auto s : og.succs[*it]) after = std::max(after, tail[s]);
    tail[*it] = og.lat[*it] + after;
  }
  unsigned best = 0;
  for (auto n : og.ops) best += og.lat[n];  // serial schedule is always feasible

  std::map<dfg::NodeKind, std::vector<unsigned>> busy;
  for (const auto& [k, c] : alloc) busy[k].assign(best + 2, 0);
  std::map<dfg::NodeId, unsigned> start;
  std::function<void(size_t, unsigned)> search = [&](size_t i, unsigned end) {
    if (i == og.ops.size()) {
      best = std::min(best, end);
      return;
    }
    dfg::NodeId n = og.ops[i];
    dfg::NodeKind k = g.node(n).kind;
    unsigned lat = og.lat[n];
    unsigned earliest = 1;
    for (auto p : og.preds[n]) earliest = std::max(earliest, start[p] + og.lat[p]);
    auto& row = busy.at(k);
    for (unsigned t = earliest; t + tail[n] - 1 < best; ++t) {
      bool fits = true;
      for (unsigned d = 0; d < lat && fits; ++d) fits = row[t + d] < alloc.at(k);
      if (!fits) continue;
      for (unsigned d = 0; d < lat; ++d) ++row[t + d];
      start[n] = t;
      search(i + 1, std::max(end, t + lat - 1));
      for (unsigned d = 0; d < lat; ++d) --row[t + d];
    }
  };
  search(0, 0);
  return best;
}

std::vector<logic::Implicant> brute_force_primes(const logic::TruthTable& t, size_t output) {
  const unsigned n = static_cast<unsigned>(t.inputs.size());
  auto implies = [&](const logic::Implicant& imp) {
    for (uint32_t row = 0; row < t.rows(); ++row)
      if (imp.covers(row) && !t.value(output, row)) return false;
    return true;
  };
  std::vector<logic::Implicant> primes;
  uint64_t cubes = 1;
  for (unsigned i = 0; i < n; ++i) cubes *= 3;
  for (uint64_t c = 0; c < cubes; ++c) {
    logic::Implicant imp;
    uint64_t x = c;
    for (unsigned i = 0; i < n; ++i, x /= 3) {
      if (x % 3 == 2) continue;
      imp.care |= 1u << i;
      if (x % 3 == 1) imp.values |= 1u << i;
    }
    bool covers_any = false;
    for (uint32_t row = 0; row < t.rows() && !covers_any; ++row) covers_any = imp.covers(row);
    if (!covers_any || !implies(imp)) continue;
    bool prime = true;
    for (unsigned i = 0; i < n && prime; ++i) {
      if (!(imp.care & (1u << i))) continue;
      logic::Implicant bigger{imp.care & ~(1u << i), imp.values & ~(1u << i)};
      if (implies(bigger)) prime = false;
    }
    if (prime) primes.push_back(imp);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

size_t minimum_cover_size(const logic::TruthTable& t, size_t output) {
  if (t.rows() > 16) throw std::invalid_argument("minimum_cover_size handles at most 4 inputs");
  const auto& on = t.minterms.at(output);
  uint32_t goal = 0;
  for (uint32_t m : on) goal |= 1u << m;
  std::vector<uint32_t> covers;
  for (const auto& p : brute_force_primes(t, output)) {
    uint32_t c = 0;
    for (uint32_t row = 0; row < t.rows(); ++row)
      if (p.covers(row)) c |= 1u << row;
    covers.push_back(c);
  }
  std::vector<int> dist(size_t{1} << t.rows(), -1);
  std::vector<uint32_t> frontier{0};
  dist[0] = 0;
  while (!frontier.empty()) {
    std::vector<uint32_t> next;
    for (uint32_t s : frontier) {
      if (s == goal) return static_cast<size_t>(dist[s]);
      for (uint32_t c : covers) {
        uint32_t u = s | c;
        if (dist[u] < 0) {
          dist[u] = dist[s] + 1;
          next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }
  throw std::logic_error("primes do not cover the function");
}

unsigned max_overlap(const std::vector<hls::Interval>& intervals) {
  unsigned last = 0;
  for (const auto& i : intervals) last = std::max(last, i.death);
  unsigned best = 0;
  for (unsigned t = 0; t <= last; ++t) {
    unsigned live = 0;
    for (const auto& i : intervals) live += i.birth <= t && t <= i.death;
    best = std::max(best, live);
  }
  return best;
}

namespace {

struct Flat {
  uint64_t cycle;
  const frontend::Stmt* stmt;
};

uint64_t flatten(const frontend::Stmt& s, uint64_t at, std::vector<Flat>& out) {
  switch (s.kind) {
    case frontend::StmtKind::Assign: out.push_back({at, &s}); return 1;
    case frontend::StmtKind::Seq: {
      uint64_t total = 0;
      for (const auto& c : s.children) total += flatten(c, at + total, out);
      return total;
    }
    case frontend::StmtKind::Par: {
      uint64_t longest = 0;
      for (const auto& c : s.children) longest = std::max(longest, flatten(c, at, out));
      return longest;
    }
  }
  return 0;
}

uint64_t eval(const frontend::Expr& e, unsigned w, const std::map<std::string, uint64_t>& env) {
  using frontend::ExprOp;
  const uint64_t m = mask(w);
  switch (e.op) {
    case ExprOp::Const: return e.value & m;
    case ExprOp::Var: return env.at(e.name) & m;
    case ExprOp::Not: return ~eval(e.operands[0], w, env) & m;
    default: break;
  }
  uint64_t a = eval(e.operands[0], w, env);
  uint64_t b = eval(e.operands[1], w, env);
  switch (e.op) {
    case ExprOp::Add: return (a + b) & m;
    case ExprOp::Sub: return (a - b) & m;
    case ExprOp::Mul: return (a * b) & m;
    case ExprOp::And: return a & b;
    case ExprOp::Or: return a | b;
    case ExprOp::Xor: return a ^ b;
    case ExprOp::Shl: return b >= w ? 0 : (a << b) & m;
    case ExprOp::Shr: return b >= w ? 0 : a >> b;
    default: return 0;
  }
}

}  // namespace

std::vector<std::pair<std::string, uint64_t>> reference_eval(const frontend::Program& p, const sim::InputVector& in) {
  std::map<std::string, uint64_t> env;
  for (const auto& port : p.ports) env[port.name] = port.dir == frontend::PortDir::In ? in.at(port.name) : 0;
  for (const auto& v : p.locals) env[v.name] = 0;
  std::vector<Flat> flat;
  flatten(p.body, 0, flat);
  std::stable_sort(flat.begin(), flat.end(), [](const Flat& a, const Flat& b) { return a.cycle < b.cycle; });
  for (size_t i = 0; i < flat.size();) {
    size_t j = i;
    std::map<std::string, uint64_t> writes;
    for (; j < flat.size() && flat[j].cycle == flat[i].cycle; ++j) {
      const auto& s = *flat[j].stmt;
      unsigned w = *p.width_of(s.target);
      writes[s.target] = eval(s.expr, w, env);
    }
    for (const auto& [k, v] : writes) env[k] = v;
    i = j;
  }
  std::vector<std::pair<std::string, uint64_t>> out;
  for (const auto& port : p.ports)
    if (port.dir == frontend::PortDir::Out) out.emplace_back(port.name, env.at(port.name));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string golden_diff(const std::string& name, const std::string& actual) {
  const std::string path = std::string(MINIHLS_GOLDEN_DIR) + "/" + name;
  if (std::getenv("MINIHLS_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    return "";
  }
  std::string expected;
  try {
    expected = read_file(path);
  } catch (const std::exception& e) {
    return e.what();
  }
  if (expected == actual) return "";
  std::istringstream a(expected), b(actual);
  std::string la, lb;
  for (int line = 1;; ++line) {
    bool ga = static_cast<bool>(std::getline(a, la));
    bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) return name + ": differs in line endings";
    if (ga != gb || la != lb)
      return name + ":" + std::to_string(line) + ": expected '" + (ga ? la : "<eof>") + "', got '" +
             (gb ? lb : "<eof>") + "'";
  }
}

logic::TruthTable table_from_mask(unsigned inputs, uint64_t bits) {
  logic::TruthTable t;
  for (unsigned i = 0; i < inputs; ++i) t.inputs.push_back(std::string(1, char('a' + i)));
  t.outputs = {"f"};
  t.minterms.resize(1);
  for (uint32_t row = 0; row < (1u << inputs); ++row)
    if ((bits >> row) & 1) t.minterms[0].push_back(row);
  return t;
}

}  // namespace minihls::testkit
