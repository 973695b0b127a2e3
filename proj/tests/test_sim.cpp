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

#include "dfg.hpp"
#include "errors.hpp"
#include "frontend.hpp"
#include "hls.hpp"
#include "rtl.hpp"
#include "sim.hpp"
#include "testkit.hpp"

using namespace minihls;

namespace {

const char* kSExample = "module s(in a: 4, in b: 4, out s: 9) { s = a*a + b*b + 4*b; }";

rtl::RtlDesign synthesize(const frontend::Program& p, const std::string& alloc_text = "",
                          const std::string& latencies = "") {
  auto g = dfg::build_dfg(p, frontend::check_widths(p));
  auto lib = hls::ResourceLibrary::defaults();
  if (!latencies.empty()) lib.apply_latencies(latencies);
  auto alloc = alloc_text.empty() ? hls::auto_allocate(g, lib) : hls::parse_allocation(alloc_text);
  auto s = hls::list_schedule(g, lib, alloc);
  auto b = hls::bind(g, s, lib, alloc);
  return rtl::build_design(p.name, g, s, b, lib);
}

}  // namespace

TEST_CASE("input parsing") {
  auto in = sim::parse_inputs("a=3, b=0x2,c=0b101");
  CHECK(in.at("a") == 3);
  CHECK(in.at("b") == 2);
  CHECK(in.at("c") == 5);
  CHECK_THROWS_AS(sim::parse_inputs("a"), InputError);
  CHECK_THROWS_AS(sim::parse_inputs("a=x"), InputError);
  CHECK_THROWS_AS(sim::parse_inputs("a=1,a=2"), InputError);
}

TEST_CASE("input checking") {
  auto p = frontend::parse_source(kSExample);
  CHECK_NOTHROW(sim::check_inputs(p, {{"a", 15}, {"b", 0}}));
  CHECK_THROWS_AS(sim::check_inputs(p, {{"a", 16}, {"b", 0}}), InputError);
  CHECK_THROWS_AS(sim::check_inputs(p, {{"a", 1}}), InputError);
  CHECK_THROWS_AS(sim::check_inputs(p, {{"a", 1}, {"b", 1}, {"s", 1}}), InputError);
  CHECK_THROWS_AS(sim::check_inputs(p, {{"a", 1}, {"b", 1}, {"z", 1}}), InputError);
}

TEST_CASE("interpreting the s-example") {
  auto p = frontend::parse_source(kSExample);
  auto r = sim::interpret(p, {{"a", 3}, {"b", 2}});
  CHECK(r.output("s") == 21);
  CHECK(r.cycles == 1);
  CHECK(sim::interpret(p, {{"a", 15}, {"b", 15}}).output("s") == 15 * 15 + 15 * 15 + 60);
  CHECK_THROWS_AS(r.output("t"), InputError);
}

TEST_CASE("par and seq timing") {
  auto par = frontend::parse_source(
      "module t(in a: 4, in b: 4, out x: 4, out y: 4, out z: 4) { par { x = a + b; y = a - b; z = a & b; } }");
  auto seq = frontend::parse_source(
      "module t(in a: 4, in b: 4, out x: 4, out y: 4, out z: 4) { seq { x = a + b; y = a - b; z = a & b; } }");
  sim::InputVector in{{"a", 9}, {"b", 3}};
  auto rp = sim::interpret(par, in);
  auto rs = sim::interpret(seq, in);
  CHECK(rp.cycles == 1);
  CHECK(rs.cycles == 3);
  CHECK(rp.outputs == rs.outputs);
  CHECK(rp.output("x") == 12);
  CHECK(rp.output("y") == 6);
  CHECK(rp.output("z") == 1);
}

TEST_CASE("reads see the previous cycle") {
  auto p = frontend::parse_source(
      "module t(in a: 4, out x: 4, out y: 4) { var v: 4; seq { v = a; par { v = v + 1; x = v; } y = v; } }");
  auto r = sim::interpret(p, {{"a", 5}});
  CHECK(r.output("x") == 5);
  CHECK(r.output("y") == 6);
  CHECK(r.cycles == 3);
}

TEST_CASE("wrap-around at the destination width") {
  auto p = frontend::parse_source("module t(in a: 4, out x: 3, out y: 4) { par { x = a + 7; y = 0 - a; } }");
  auto r = sim::interpret(p, {{"a", 5}});
  CHECK(r.output("x") == (5 + 7) % 8);
  CHECK(r.output("y") == 11);
}

TEST_CASE("interpreter agrees with an independent evaluator") {
  sim::SplitMix64 rng(11);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    auto p = frontend::parse_source(testkit::random_program(seed));
    for (const auto& v : sim::cosim_vectors(p, 5, seed)) {
      CHECK(sim::interpret(p, v).outputs == testkit::reference_eval(p, v));
    }
  }
}

TEST_CASE("RTL simulation of the s-example") {
  auto p = frontend::parse_source(kSExample);
  auto d = synthesize(p, "mul=2,add=1");
  auto r = sim::simulate_rtl(d, {{"a", 3}, {"b", 2}}, true);
  CHECK(r.output("s") == 21);
  CHECK(r.datapath_cycles == 3);
  CHECK(r.cycles == 3 + sim::kStartOverhead);
  REQUIRE_FALSE(r.trace.empty());
  CHECK(r.trace.back().done);
  auto text = sim::format_trace(d, r.trace);
  CHECK(text.find("mul1") != std::string::npos);
  CHECK(text == sim::format_trace(d, sim::simulate_rtl(d, {{"a", 3}, {"b", 2}}, true).trace));
  CHECK(sim::simulate_rtl(d, {{"a", 3}, {"b", 2}}).trace.empty());
}

TEST_CASE("RTL simulation with multi-cycle multipliers") {
  auto p = frontend::parse_source(kSExample);
  auto d = synthesize(p, "mul=1,add=1", "mul=3");
  for (uint64_t a = 0; a < 16; a += 5)
    for (uint64_t b = 0; b < 16; b += 3) {
      auto r = sim::simulate_rtl(d, {{"a", a}, {"b", b}});
      CHECK(r.output("s") == a * a + b * b + 4 * b);
      CHECK(r.datapath_cycles == d.length);
    }
}

TEST_CASE("watchdog fires when done never rises") {
  auto p = frontend::parse_source(kSExample);
  auto d = synthesize(p, "mul=2,add=1");
  d.controller.words.back().finish = false;
  CHECK_THROWS_AS(sim::simulate_rtl(d, {{"a", 1}, {"b", 1}}), WatchdogError);
}

TEST_CASE("cosim vectors") {
  auto p = frontend::parse_source(kSExample);
  auto v = sim::cosim_vectors(p, 0, 1);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == sim::InputVector{{"a", 0}, {"b", 0}});
  CHECK(v[1] == sim::InputVector{{"a", 15}, {"b", 15}});
  CHECK(sim::cosim_vectors(p, 10, 3).size() == 12);
  CHECK(sim::cosim_vectors(p, 10, 3) == sim::cosim_vectors(p, 10, 3));
  CHECK(sim::cosim_vectors(p, 10, 3) != sim::cosim_vectors(p, 10, 4));
  for (const auto& x : sim::cosim_vectors(p, 50, 9)) CHECK_NOTHROW(sim::check_inputs(p, x));
}

TEST_CASE("cosim passes on the s-example") {
  auto p = frontend::parse_source(kSExample);
  auto rep = sim::cosim(p, synthesize(p, "mul=2,add=1"), 200, 1);
  CHECK(rep.vectors == 202);
  CHECK(rep.passed());
  CHECK(sim::format_cosim(rep) == "PASS: 202 vectors, 0 mismatches\n");
}

TEST_CASE("cosim catches a faulty design") {
  auto p = frontend::parse_source(kSExample);
  auto d = synthesize(p, "mul=2,add=1");
  REQUIRE_FALSE(d.datapath.units.empty());
  // Swap the operation kinds of the adder: it now multiplies.
  auto broken = d;
  broken.datapath.units[0].kind = dfg::NodeKind::Mul;
  auto rep = sim::cosim(p, broken, 0, 1);
  CHECK_FALSE(rep.passed());
  CHECK(rep.vectors == 2);
  REQUIRE_FALSE(rep.mismatches.empty());
  CHECK(sim::format_cosim(rep).rfind("FAIL", 0) == 0);

  auto late = d;
  for (auto& w : late.controller.words) w.reg_enable.assign(w.reg_enable.size(), false);
  CHECK_FALSE(sim::cosim(p, late, 10, 1).passed());
}

TEST_CASE("cosim on generated programs") {
  const char* latencies[] = {"", "mul=2", "mul=2,add=2,sub=3"};
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto src = testkit::random_program(seed);
    auto p = frontend::parse_source(src);
    auto rep = sim::cosim(p, synthesize(p, "", latencies[seed % 3]), 10, seed);
    CAPTURE(src);
    CHECK(rep.passed());
  }
}
