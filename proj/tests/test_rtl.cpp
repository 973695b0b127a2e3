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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>

#include "dfg.hpp"
#include "frontend.hpp"
#include "hls.hpp"
#include "rtl.hpp"
#include "testkit.hpp"

using namespace minihls;
using hls::SourceKind;

namespace {

const char* kSExample = "module s(in a: 4, in b: 4, out s: 9) { s = a*a + b*b + 4*b; }";

struct Built {
  dfg::Dfg g;
  hls::ResourceLibrary lib = hls::ResourceLibrary::defaults();
  hls::Schedule s;
  hls::Binding b;
  rtl::RtlDesign d;
};

Built build(const std::string& src, const std::string& alloc_text = "", const std::string& latencies = "") {
  Built r;
  auto p = frontend::parse_source(src);
  r.g = dfg::build_dfg(p, frontend::check_widths(p));
  if (!latencies.empty()) r.lib.apply_latencies(latencies);
  auto alloc = alloc_text.empty() ? hls::auto_allocate(r.g, r.lib) : hls::parse_allocation(alloc_text);
  r.s = hls::list_schedule(r.g, r.lib, alloc);
  r.b = hls::bind(r.g, r.s, r.lib, alloc);
  r.d = rtl::build_design(p.name, r.g, r.s, r.b, r.lib);
  return r;
}

// A value tag: which graph node a net carries, or a literal constant.
struct Tag {
  bool constant = false;
  uint64_t value = 0;  // node id, or the constant
  unsigned bits = 0;   // constants only
  friend bool operator==(const Tag&, const Tag&) = default;
};

// Walks the controller symbolically and checks that every unit operand and
// every output sees exactly the value the graph says it should. Returns the
// first problem found.
std::string dataflow_audit(const Built& x) {
  const auto& g = x.g;
  const auto& dp = x.d.datapath;
  const auto& words = x.d.controller.words;
  std::vector<dfg::NodeId> input_nodes;
  for (const auto& n : g.nodes)
    if (n.kind == dfg::NodeKind::Input) input_nodes.push_back(n.id);

  std::vector<std::optional<Tag>> regs(dp.registers.size());
  struct Pending {
    dfg::NodeId node;
    unsigned ready;
  };
  std::vector<std::optional<Pending>> busy(dp.units.size());
  std::vector<std::optional<Tag>> unit_out(dp.units.size());

  auto unit_index = [&](const hls::FuInstance& f) -> std::optional<size_t> {
    for (size_t i = 0; i < dp.units.size(); ++i)
      if (dp.units[i].kind == f.kind && dp.units[i].instance == f.instance) return i;
    return std::nullopt;
  };
  auto resolve = [&](const rtl::Drive& d, const rtl::ControlWord& w) -> std::optional<Tag> {
    size_t pick = 0;
    if (d.mux) {
      int sel = w.mux_select.at(*d.mux);
      if (sel < 0 || static_cast<size_t>(sel) >= d.sources.size()) return std::nullopt;
      pick = static_cast<size_t>(sel);
    }
    const auto& src = d.sources.at(pick);
    switch (src.kind) {
      case SourceKind::Input:
        if (src.index >= input_nodes.size()) return std::nullopt;
        return Tag{false, input_nodes[src.index], 0};
      case SourceKind::Const:
        return Tag{true, src.value, src.bits};
      case SourceKind::Register:
        return regs.at(src.index - 1);
      case SourceKind::Unit: {
        auto ui = unit_index(src.unit);
        if (!ui) return std::nullopt;
        return unit_out[*ui];
      }
    }
    return std::nullopt;
  };
  auto expected = [&](const dfg::Edge& e) {
    const auto& p = g.node(e.producer);
    if (p.kind == dfg::NodeKind::Const) {
      uint64_t mask = e.bits >= 64 ? ~0ull : (1ull << e.bits) - 1;
      return Tag{true, p.value & mask, e.bits};
    }
    return Tag{false, e.producer, 0};
  };

  for (unsigned step = 1; step <= x.d.length; ++step) {
    const auto& w = words.at(step);
    for (size_t u = 0; u < dp.units.size(); ++u) {
      unit_out[u].reset();
      int op = w.unit_op.at(u);
      if (op >= 0) {
        if (busy[u] && busy[u]->ready >= step) return "unit " + dp.units[u].name + " restarted while busy";
        auto n = static_cast<dfg::NodeId>(op);
        for (const auto& e : g.operands(n)) {
          auto got = resolve(dp.units[u].operands.at(e.position), w);
          if (!got || !(*got == expected(e)))
            return "step " + std::to_string(step) + ": operand " + std::to_string(e.position) + " of n" +
                   std::to_string(n) + " is wrong";
        }
        busy[u] = Pending{n, step + x.lib.latency(g.node(n).kind) - 1};
      }
      if (busy[u] && busy[u]->ready == step) unit_out[u] = Tag{false, busy[u]->node, 0};
    }
    std::vector<std::optional<Tag>> next = regs;
    for (size_t r = 0; r < dp.registers.size(); ++r)
      if (w.reg_enable.at(r)) next[r] = resolve(dp.registers[r].input, w);
    regs = next;
    for (auto& p : busy)
      if (p && p->ready == step) p.reset();
    if (w.finish != (step == x.d.length)) return "finish flag on the wrong state";
  }
  const auto& last = words.at(x.d.length);
  for (size_t o = 0; o < dp.outputs.size(); ++o) {
    rtl::Drive d;
    d.sources = {dp.outputs[o].source};
    auto got = resolve(d, last);
    auto out_node = g.outputs.at(o).second;
    if (!got || !(*got == expected(g.operands(out_node)[0]))) return "output " + dp.outputs[o].name + " is wrong";
  }
  return "";
}

}  // namespace

TEST_CASE("select width") {
  CHECK(rtl::select_bits(1) == 1);
  CHECK(rtl::select_bits(2) == 1);
  CHECK(rtl::select_bits(3) == 2);
  CHECK(rtl::select_bits(4) == 2);
  CHECK(rtl::select_bits(5) == 3);
  CHECK(rtl::select_bits(9) == 4);
}

TEST_CASE("s-example design structure") {
  auto x = build(kSExample, "mul=2,add=1");
  const auto& d = x.d;
  CHECK(d.name == "s");
  CHECK(d.length == 3);
  CHECK(d.controller.state_count == 4);
  CHECK(d.controller.state_bits == 2);
  CHECK(d.controller.words.size() == 4);
  CHECK(d.datapath.units.size() == 3);
  CHECK(d.datapath.units[0].name == "add1");
  CHECK(d.datapath.units[1].name == "mul1");
  CHECK(d.datapath.units[2].name == "mul2");
  CHECK(d.datapath.registers.size() == 2);
  CHECK(d.datapath.inputs.size() == 2);
  REQUIRE(d.datapath.outputs.size() == 1);
  CHECK(d.datapath.outputs[0].width == 9);
  CHECK(rtl::design_violations(d).empty());
  CHECK(dataflow_audit(x) == "");
  auto st = rtl::rtl_stats(d);
  CHECK(st.functional_units == 3);
  CHECK(st.registers == 2);
  CHECK(st.intermediate_registers == 2);
  CHECK(st.states == 4);
  for (const auto& m : d.datapath.muxes) CHECK(m.select_width == rtl::select_bits(m.input_count));
  CHECK(d.controller.words[0].finish == false);
  CHECK(d.controller.words[3].finish);
  for (size_t r = 0; r < 2; ++r) CHECK_FALSE(d.controller.words[0].reg_enable[r]);
}

TEST_CASE("register bits sum bound widths") {
  auto x = build(kSExample, "mul=2,add=1");
  unsigned bits = 0;
  for (const auto& r : x.d.datapath.registers) bits += r.width;
  CHECK(rtl::rtl_stats(x.d).register_bits == bits);
  CHECK(bits == 18);
}

TEST_CASE("half adder has no intermediate registers") {
  auto x = build("module ha(in a: 1, in b: 1, out s: 1, out c: 1) { par { s = a ^ b; c = a & b; } }");
  CHECK(x.d.length == 1);
  CHECK(rtl::rtl_stats(x.d).intermediate_registers == 0);
  CHECK(dataflow_audit(x) == "");
}

TEST_CASE("empty schedule finishes from idle") {
  auto x = build("module w(in a: 4, out y: 4) { y = a; }");
  CHECK(x.d.length == 0);
  CHECK(x.d.controller.state_count == 1);
  CHECK(x.d.controller.words[0].finish);
  CHECK(rtl::design_violations(x.d).empty());
  CHECK(dataflow_audit(x) == "");
}

TEST_CASE("multi-cycle units capture operands") {
  auto x = build(kSExample, "mul=1,add=1", "mul=2");
  CHECK(rtl::design_violations(x.d).empty());
  CHECK(dataflow_audit(x) == "");
  bool captured = false;
  for (const auto& w : x.d.controller.words)
    for (size_t u = 0; u < w.unit_capture.size(); ++u)
      if (w.unit_capture[u]) {
        captured = true;
        CHECK(x.d.datapath.units[u].latency == 2);
        CHECK(w.unit_op[u] >= 0);
      }
  CHECK(captured);
}

TEST_CASE("audit detects corrupted controllers") {
  auto x = build(kSExample, "mul=2,add=1");
  REQUIRE(dataflow_audit(x) == "");
  int caught = 0, tried = 0;
  for (unsigned state = 1; state <= x.d.length; ++state) {
    for (size_t r = 0; r < x.d.datapath.registers.size(); ++r) {
      auto y = x;
      y.d.controller.words[state].reg_enable[r] = !y.d.controller.words[state].reg_enable[r];
      ++tried;
      caught += dataflow_audit(y) != "";
    }
    for (size_t m = 0; m < x.d.datapath.muxes.size(); ++m) {
      int sel = x.d.controller.words[state].mux_select[m];
      if (sel < 0) continue;
      auto y = x;
      y.d.controller.words[state].mux_select[m] = (sel + 1) % static_cast<int>(x.d.datapath.muxes[m].input_count);
      ++tried;
      caught += dataflow_audit(y) != "";
    }
  }
  MESSAGE(caught << " of " << tried << " single-bit controller faults change the dataflow");
  CHECK(caught > 0);

  auto bad = x;
  if (!bad.d.datapath.muxes.empty()) {
    bad.d.controller.words[1].mux_select[0] = 7;
    CHECK_FALSE(rtl::design_violations(bad.d).empty());
  }
  auto short_word = x;
  short_word.d.controller.words[2].reg_enable.pop_back();
  CHECK_FALSE(rtl::design_violations(short_word.d).empty());
}

TEST_CASE("generated programs pass the structural and dataflow audits") {
  sim::SplitMix64 rng(5);
  const char* latencies[] = {"", "mul=2", "mul=3,add=2"};
  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto src = testkit::random_program(seed);
    auto p = frontend::parse_source(src);
    auto g = dfg::build_dfg(p, frontend::check_widths(p));
    std::string alloc;
    for (auto k : dfg::operation_kinds()) {
      bool used = false;
      for (const auto& n : g.nodes) used |= n.kind == k;
      if (!used) continue;
      if (!alloc.empty()) alloc += ",";
      alloc += std::string(dfg::kind_name(k)) + "=" + std::to_string(1 + rng.below(2));
    }
    auto x = build(src, alloc.empty() ? "add=1" : alloc, latencies[seed % 3]);
    CAPTURE(src);
    CHECK(rtl::design_violations(x.d).empty());
    CHECK(dataflow_audit(x) == "");
    CHECK(x.d.controller.state_count == x.d.length + 1);
    CHECK((1u << x.d.controller.state_bits) >= x.d.controller.state_count);
  }
}
