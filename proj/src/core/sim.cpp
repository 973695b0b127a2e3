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

#include "sim.hpp"

#include <algorithm>
#include <sstream>

#include "errors.hpp"

namespace minihls::sim {

using frontend::Expr;
using frontend::ExprOp;
using frontend::Program;
using frontend::Stmt;
using frontend::StmtKind;

namespace {

uint64_t mask(unsigned bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

uint64_t shift_left(uint64_t x, uint64_t k) { return k >= 64 ? 0 : x << k; }
uint64_t shift_right(uint64_t x, uint64_t k) { return k >= 64 ? 0 : x >> k; }

}  // namespace

uint64_t SimResult::output(const std::string& name) const {
  for (const auto& [n, v] : outputs)
    if (n == name) return v;
  throw InputError("no output named '" + name + "'");
}

void check_inputs(const Program& program, const InputVector& inputs) {
  for (const auto& [name, value] : inputs) {
    const auto* port = program.find_port(name);
    if (!port || port->dir != frontend::PortDir::In) throw InputError("'" + name + "' is not an input port");
    if (value > mask(port->width))
      throw InputError("input " + name + "=" + std::to_string(value) + " does not fit in " + std::to_string(port->width) +
                       " bits");
  }
  for (const auto* port : program.inputs())
    if (!inputs.count(port->name)) throw InputError("missing value for input '" + port->name + "'");
}

InputVector parse_inputs(std::string_view text) {
  InputVector out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw InputError("malformed input assignment '" + item + "'");
    std::string name = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    int base = 10;
    if (val.size() > 2 && val[0] == '0' && (val[1] == 'x' || val[1] == 'X')) base = 16;
    if (val.size() > 2 && val[0] == '0' && (val[1] == 'b' || val[1] == 'B')) base = 2;
    std::string digits = base == 10 ? val : val.substr(2);
    size_t used = 0;
    uint64_t v = 0;
    try {
      if (digits.empty() || digits[0] == '-' || digits[0] == '+') throw std::invalid_argument("sign");
      v = std::stoull(digits, &used, base);
    } catch (const std::exception&) {
      throw InputError("bad value '" + val + "' for input '" + name + "'");
    }
    if (used != digits.size()) throw InputError("bad value '" + val + "' for input '" + name + "'");
    if (!out.emplace(name, v).second) throw InputError("input '" + name + "' given twice");
  }
  return out;
}

// Interpreter ----------------------------------------------------------------------

namespace {

class Interpreter {
 public:
  explicit Interpreter(const Program& p) : prog_(p) {}

  SimResult run(const InputVector& inputs) {
    check_inputs(prog_, inputs);
    for (const auto& [k, v] : inputs) env_[k] = v;

    std::vector<std::pair<uint64_t, const Stmt*>> timeline;
    schedule(prog_.body, 1, timeline);
    std::stable_sort(timeline.begin(), timeline.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < timeline.size();) {
      std::vector<std::pair<std::string, uint64_t>> commits;
      size_t j = i;
      for (; j < timeline.size() && timeline[j].first == timeline[i].first; ++j) {
        const Stmt* s = timeline[j].second;
        unsigned w = *prog_.width_of(s->target);
        commits.emplace_back(s->target, eval(s->expr, w));
      }
      for (auto& [name, v] : commits) env_[name] = v;
      i = j;
    }

    SimResult r;
    for (const auto* port : prog_.outputs()) r.outputs.emplace_back(port->name, env_.at(port->name));
    r.cycles = frontend::source_cycles(prog_.body);
    return r;
  }

 private:
  void schedule(const Stmt& s, uint64_t start, std::vector<std::pair<uint64_t, const Stmt*>>& out) {
    switch (s.kind) {
      case StmtKind::Assign: out.emplace_back(start, &s); return;
      case StmtKind::Seq:
        for (const auto& c : s.children) {
          schedule(c, start, out);
          start += frontend::source_cycles(c);
        }
        return;
      case StmtKind::Par:
        for (const auto& c : s.children) schedule(c, start, out);
        return;
    }
  }

  // Operands are brought to width w before the operator applies.
  uint64_t eval(const Expr& e, unsigned w) {
    const uint64_t m = mask(w);
    switch (e.op) {
      case ExprOp::Const: return e.value & m;
      case ExprOp::Var: return env_.at(e.name) & m;
      case ExprOp::Not: return ~eval(e.operands[0], w) & m;
      default: break;
    }
    uint64_t a = eval(e.operands[0], w);
    uint64_t b = eval(e.operands[1], w);
    switch (e.op) {
      case ExprOp::Add: return (a + b) & m;
      case ExprOp::Sub: return (a - b) & m;
      case ExprOp::Mul: return (a * b) & m;
      case ExprOp::And: return a & b;
      case ExprOp::Or: return a | b;
      case ExprOp::Xor: return a ^ b;
      case ExprOp::Shl: return shift_left(a, b) & m;
      case ExprOp::Shr: return shift_right(a, b);
      default: return 0;
    }
  }

  const Program& prog_;
  std::map<std::string, uint64_t> env_;
};

}  // namespace

SimResult interpret(const Program& program, const InputVector& inputs) { return Interpreter(program).run(inputs); }

// RTL simulation -------------------------------------------------------------------

namespace {

uint64_t apply_unit(dfg::NodeKind kind, unsigned width, const std::vector<uint64_t>& ops) {
  const uint64_t m = mask(width);
  uint64_t a = ops.empty() ? 0 : ops[0];
  uint64_t b = ops.size() > 1 ? ops[1] : 0;
  switch (kind) {
    case dfg::NodeKind::Add: return (a + b) & m;
    case dfg::NodeKind::Sub: return (a - b) & m;
    case dfg::NodeKind::Mul: return (a * b) & m;
    case dfg::NodeKind::And: return a & b & m;
    case dfg::NodeKind::Or: return (a | b) & m;
    case dfg::NodeKind::Xor: return (a ^ b) & m;
    case dfg::NodeKind::Not: return ~a & m;
    case dfg::NodeKind::Shl: return shift_left(a, b) & m;
    case dfg::NodeKind::Shr: return shift_right(a, b) & m;
    default: return 0;
  }
}

}  // namespace

SimResult simulate_rtl(const rtl::RtlDesign& design, const InputVector& inputs, bool trace) {
  const auto& dp = design.datapath;
  const auto& fsm = design.controller;
  std::vector<uint64_t> in_values;
  for (const auto& p : dp.inputs) {
    auto it = inputs.find(p.name);
    if (it == inputs.end()) throw InputError("missing value for input '" + p.name + "'");
    if (it->second > mask(p.width))
      throw InputError("input " + p.name + "=" + std::to_string(it->second) + " does not fit in " +
                       std::to_string(p.width) + " bits");
    in_values.push_back(it->second);
  }
  for (const auto& [name, v] : inputs)
    if (std::none_of(dp.inputs.begin(), dp.inputs.end(), [&](const rtl::Port& p) { return p.name == name; }))
      throw InputError("'" + name + "' is not an input port");

  std::vector<uint64_t> regs(dp.registers.size(), 0);
  std::vector<std::vector<uint64_t>> latch(dp.units.size());
  for (size_t u = 0; u < dp.units.size(); ++u) latch[u].assign(dp.units[u].operands.size(), 0);
  std::vector<uint64_t> unit_out(dp.units.size(), 0);

  auto source_value = [&](const rtl::Source& s) -> uint64_t {
    switch (s.kind) {
      case rtl::SourceKind::Input: return in_values.at(s.index) & mask(s.bits);
      case rtl::SourceKind::Const: return s.value & mask(s.bits);
      case rtl::SourceKind::Register: return regs.at(s.index - 1) & mask(s.bits);
      case rtl::SourceKind::Unit:
        for (size_t u = 0; u < dp.units.size(); ++u)
          if (dp.units[u].kind == s.unit.kind && dp.units[u].instance == s.unit.instance)
            return unit_out[u] & mask(s.bits);
        return 0;
    }
    return 0;
  };
  auto drive_value = [&](const rtl::Drive& d, const rtl::ControlWord& w) -> uint64_t {
    int sel = d.mux ? w.mux_select.at(*d.mux) : 0;
    if (sel < 0) sel = 0;
    return source_value(d.sources.at(static_cast<size_t>(sel)));
  };

  SimResult result;
  unsigned state = 0;  // after synchronous reset
  bool done = false;
  const uint64_t limit = 10 * (uint64_t{design.length} + 2);
  for (uint64_t cycle = 1;; ++cycle) {
    if (cycle > limit) throw WatchdogError("done not reached within " + std::to_string(limit) + " cycles");
    const bool start = cycle == 1;
    const rtl::ControlWord& w = fsm.words.at(state);

    std::vector<std::vector<uint64_t>> operand_values(dp.units.size());
    for (size_t u = 0; u < dp.units.size(); ++u) {
      const auto& unit = dp.units[u];
      for (const auto& d : unit.operands) operand_values[u].push_back(drive_value(d, w));
      unit_out[u] = apply_unit(unit.kind, unit.width, unit.latency > 1 ? latch[u] : operand_values[u]);
    }

    // Clock edge.
    std::vector<uint64_t> next_regs = regs;
    for (size_t r = 0; r < dp.registers.size(); ++r)
      if (w.reg_enable[r]) next_regs[r] = drive_value(dp.registers[r].input, w) & mask(dp.registers[r].width);
    for (size_t u = 0; u < dp.units.size(); ++u)
      if (w.unit_capture[u]) latch[u] = operand_values[u];
    regs = std::move(next_regs);
    if (state != 0) ++result.datapath_cycles;
    if (state == 0) {
      if (start) {
        if (w.finish) done = true;
        else state = 1;
      }
    } else if (w.finish) {
      state = 0;
      done = true;
    } else {
      state = state + 1 < fsm.words.size() ? state + 1 : 0;
    }

    if (trace) {
      TraceEntry t;
      t.cycle = cycle;
      t.state = static_cast<unsigned>(&w - fsm.words.data());
      t.mux_select = w.mux_select;
      t.reg_enable = w.reg_enable;
      t.unit_op = w.unit_op;
      t.unit_result = unit_out;
      t.registers = regs;
      t.done = done;
      result.trace.push_back(std::move(t));
    }
    if (done) {
      result.cycles = cycle;
      break;
    }
  }
  for (const auto& p : dp.outputs) result.outputs.emplace_back(p.name, source_value(p.source) & mask(p.width));
  return result;
}

std::string format_trace(const rtl::RtlDesign& design, const std::vector<TraceEntry>& trace) {
  const auto& dp = design.datapath;
  std::ostringstream os;
  os << "# cycle state done | unit:op=result ... | register=value ...\n";
  for (const auto& t : trace) {
    os << t.cycle << " " << t.state << " " << (t.done ? 1 : 0) << " |";
    for (size_t u = 0; u < dp.units.size(); ++u) {
      os << " " << dp.units[u].name << ":";
      if (t.unit_op[u] >= 0) os << "n" << t.unit_op[u];
      else os << "-";
      os << "=" << t.unit_result[u];
    }
    os << " |";
    for (size_t r = 0; r < dp.registers.size(); ++r) os << " " << dp.registers[r].name << "=" << t.registers[r];
    os << "\n";
  }
  return os.str();
}

// Co-simulation --------------------------------------------------------------------

std::vector<InputVector> cosim_vectors(const Program& program, uint64_t trials, uint64_t seed) {
  std::vector<InputVector> vectors(2);
  for (const auto* p : program.inputs()) {
    vectors[0][p->name] = 0;
    vectors[1][p->name] = mask(p->width);
  }
  SplitMix64 rng(seed);
  for (uint64_t i = 0; i < trials; ++i) {
    InputVector v;
    for (const auto* p : program.inputs()) v[p->name] = rng.next() & mask(p->width);
    vectors.push_back(std::move(v));
  }
  return vectors;
}

CosimReport cosim(const Program& program, const rtl::RtlDesign& design, uint64_t trials, uint64_t seed) {
  CosimReport report;
  for (const auto& v : cosim_vectors(program, trials, seed)) {
    ++report.vectors;
    SimResult want = interpret(program, v);
    SimResult got = simulate_rtl(design, v);
    if (want.outputs != got.outputs) report.mismatches.push_back({v, want.outputs, got.outputs});
  }
  return report;
}

std::string format_cosim(const CosimReport& report) {
  std::ostringstream os;
  os << (report.passed() ? "PASS" : "FAIL") << ": " << report.vectors << " vectors, " << report.mismatches.size()
     << " mismatch" << (report.mismatches.size() == 1 ? "" : "es") << "\n";
  for (const auto& m : report.mismatches) {
    os << "  mismatch at";
    for (const auto& [k, v] : m.inputs) os << " " << k << "=" << v;
    os << ":";
    for (size_t i = 0; i < m.expected.size(); ++i)
      os << " " << m.expected[i].first << " expected " << m.expected[i].second << " got " << m.actual[i].second;
    os << "\n";
  }
  return os.str();
}

}  // namespace minihls::sim
