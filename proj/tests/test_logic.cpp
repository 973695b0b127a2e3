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

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "frontend.hpp"
#include "logic.hpp"
#include "testkit.hpp"

using namespace minihls;
using logic::GateType;
using logic::Implicant;

namespace {

logic::TruthTable majority() {
  logic::TruthTable t;
  t.inputs = {"A", "B", "C"};
  t.outputs = {"F"};
  t.minterms = {{3, 5, 6, 7}};
  logic::normalize(t);
  return t;
}

// Every row, evaluated bit-parallel, compared with the table.
bool matches_table(const logic::GateNetlist& n, const logic::TruthTable& t, size_t out) {
  for (uint32_t row = 0; row < t.rows(); ++row) {
    std::map<std::string, bool> in;
    for (size_t i = 0; i < t.inputs.size(); ++i) in[t.inputs[i]] = (row >> (t.inputs.size() - 1 - i)) & 1;
    if (n.outputs.size() <= out) return false;
    if (logic::eval_netlist(n, in).at(n.outputs[out].name) != t.value(out, row)) return false;
  }
  return true;
}

bool is_prime(const Implicant& imp, const logic::TruthTable& t) {
  for (uint32_t row = 0; row < t.rows(); ++row)
    if (imp.covers(row) && !t.value(0, row)) return false;
  for (uint32_t bit = imp.care; bit; bit &= bit - 1) {
    uint32_t drop = bit & -bit;
    Implicant wider{imp.care & ~drop, imp.values & ~drop};
    bool ok = true;
    for (uint32_t row = 0; row < t.rows() && ok; ++row)
      if (wider.covers(row) && !t.value(0, row)) ok = false;
    if (ok) return false;
  }
  return true;
}

logic::GateNetlist half_adder() {
  logic::GateNetlist n;
  auto a = n.add_input("a");
  auto b = n.add_input("b");
  auto c = n.add_gate(GateType::And, {a, b}, n.add_wire("c"));
  auto s = n.add_gate(GateType::Xor, {a, b}, n.add_wire("s"));
  n.add_output("c", c);
  n.add_output("s", s);
  return n;
}

}  // namespace

TEST_CASE("truth table normalization") {
  logic::TruthTable t;
  t.inputs = {"a", "b"};
  t.outputs = {"f"};
  t.minterms = {{3, 1, 3}};
  logic::normalize(t);
  CHECK(t.minterms[0] == std::vector<uint32_t>{1, 3});
  CHECK(t.value(0, 1));
  CHECK_FALSE(t.value(0, 2));
  CHECK(t.output_index("f") == 0);
  CHECK_THROWS_AS(t.output_index("g"), InputError);

  auto bad = t;
  bad.minterms = {{4}};
  CHECK_THROWS_AS(logic::normalize(bad), InputError);
  bad = t;
  bad.inputs = {"a", "a"};
  CHECK_THROWS_AS(logic::normalize(bad), InputError);
  logic::TruthTable big;
  for (int i = 0; i < 11; ++i) big.inputs.push_back("x" + std::to_string(i));
  big.outputs = {"f"};
  big.minterms = {{}};
  CHECK_THROWS_AS(logic::normalize(big), SizeError);
}

TEST_CASE("implicant text") {
  std::vector<std::string> abc{"A", "B", "C"};
  CHECK(logic::to_string(Implicant{0b111, 0b011}, abc) == "A'BC");
  CHECK(logic::to_string(Implicant{0b110, 0b100}, abc) == "AB'");
  CHECK(logic::to_string(Implicant{0, 0}, abc) == "1");
  CHECK(logic::to_string(Implicant{0b11, 0b01}, {"x0", "x1"}) == "x0' x1");
}

TEST_CASE("majority: canonical cover") {
  auto t = majority();
  auto canon = logic::canonical_sop(t, "F");
  CHECK(canon.size() == 4);
  CHECK(logic::to_string(canon, t.inputs) == "A'BC + AB'C + ABC' + ABC");
  CHECK(logic::literal_count(canon) == 12);
}

TEST_CASE("majority: primes and minimized cover") {
  auto t = majority();
  auto primes = logic::qm_primes(t, "F");
  CHECK(primes == testkit::brute_force_primes(t, 0));
  CHECK(primes.size() == 3);
  auto cover = logic::minimize(t, "F");
  CHECK(cover.size() == 3);
  for (const auto& p : cover) CHECK(p.literals() == 2);
  // Each product covers a minterm no other product covers.
  for (size_t i = 0; i < cover.size(); ++i) {
    bool essential = false;
    for (uint32_t m : t.minterms[0]) {
      bool others = false;
      for (size_t j = 0; j < cover.size(); ++j) others |= j != i && cover[j].covers(m);
      essential |= cover[i].covers(m) && !others;
    }
    CHECK(essential);
  }
  std::set<std::string> terms;
  for (const auto& p : cover) terms.insert(logic::to_string(p, t.inputs));
  CHECK(terms == std::set<std::string>{"AB", "AC", "BC"});
  for (uint32_t row = 0; row < 8; ++row) CHECK(logic::cover_value(cover, row) == t.value(0, row));
}

TEST_CASE("majority: gate counts") {
  auto t = majority();
  auto canon = logic::sop_to_aoi_netlist(logic::canonical_sop(t, "F"), t.inputs, "F");
  CHECK(canon.count(GateType::Not) == 3);
  CHECK(canon.count(GateType::And) == 4);
  CHECK(canon.count(GateType::Or) == 1);
  auto min = logic::sop_to_aoi_netlist(logic::minimize(t, "F"), t.inputs, "F");
  CHECK(min.gates.size() == 4);
  CHECK(min.count(GateType::And) == 3);
  CHECK(min.count(GateType::Or) == 1);
  CHECK(logic::check_equivalence(canon, t).equivalent);
  CHECK(logic::check_equivalence(min, t).equivalent);
  CHECK(logic::check_equivalence(canon, min).equivalent);
}

TEST_CASE("xor has no merges") {
  auto t = testkit::table_from_mask(2, 0b0110);
  auto cover = logic::minimize(t, "f");
  CHECK(logic::to_string(cover, t.inputs) == "a'b + ab'");
}

TEST_CASE("constant functions") {
  auto zero = testkit::table_from_mask(3, 0);
  CHECK(logic::minimize(zero, "f").empty());
  auto n0 = logic::sop_to_aoi_netlist(logic::minimize(zero, "f"), zero.inputs, "f");
  CHECK(n0.gates.empty());
  CHECK(logic::check_equivalence(n0, zero).equivalent);
  auto one = testkit::table_from_mask(3, 0xff);
  auto c1 = logic::minimize(one, "f");
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].care == 0);
  CHECK(logic::check_equivalence(logic::sop_to_aoi_netlist(c1, one.inputs, "f"), one).equivalent);
}

TEST_CASE("all 3-input functions: primes and cover quality") {
  std::vector<uint64_t> cyclic;
  for (uint64_t mask = 0; mask < 256; ++mask) {
    auto t = testkit::table_from_mask(3, mask);
    auto primes = logic::qm_primes(t, "f");
    CHECK(primes == testkit::brute_force_primes(t, 0));
    auto cover = logic::minimize(t, "f");
    for (const auto& p : cover) CHECK(is_prime(p, t));
    for (uint32_t row = 0; row < 8; ++row) CHECK(logic::cover_value(cover, row) == t.value(0, row));
    size_t best = testkit::minimum_cover_size(t, 0);
    CHECK(cover.size() >= best);
    // Greedy selection can lose one product on a cyclic core.
    CHECK(cover.size() <= best + 1);
    if (cover.size() > best) cyclic.push_back(mask);
  }
  // Exactly the functions with no essential prime at all.
  CHECK(cyclic == std::vector<uint64_t>{126, 189, 219, 231});
}

TEST_CASE("random 4- and 5-input functions") {
  sim::SplitMix64 rng(7);
  size_t above_min = 0;
  for (int i = 0; i < 300; ++i) {
    unsigned n = 4 + static_cast<unsigned>(rng.below(2));
    uint64_t mask = rng.next() & ((n == 5) ? 0xffffffffull : 0xffffull);
    auto t = testkit::table_from_mask(n, mask);
    CHECK(logic::qm_primes(t, "f") == testkit::brute_force_primes(t, 0));
    auto cover = logic::minimize(t, "f");
    for (uint32_t row = 0; row < t.rows(); ++row) REQUIRE(logic::cover_value(cover, row) == t.value(0, row));
    if (n == 4) {
      size_t best = testkit::minimum_cover_size(t, 0);
      CHECK(cover.size() >= best);
      above_min += cover.size() > best;
    }
  }
  MESSAGE("greedy cover above minimum on " << above_min << " 4-input functions");
}

TEST_CASE("size limits") {
  auto t = testkit::table_from_mask(4, 0x8000);
  t.inputs.resize(11);
  for (size_t i = 4; i < 11; ++i) t.inputs[i] = "x" + std::to_string(i);
  CHECK_THROWS_AS(logic::qm_primes(t, "f"), SizeError);
}

TEST_CASE("netlist validation") {
  auto n = half_adder();
  CHECK_NOTHROW(logic::validate(n));
  auto dup = n;
  dup.gates.push_back({GateType::Or, {0, 1}, dup.gates[0].output});
  CHECK_THROWS_AS(logic::validate(dup), NetlistError);
  auto arity = n;
  arity.gates[0].inputs = {};
  CHECK_THROWS_AS(logic::validate(arity), NetlistError);
  auto inv = n;
  inv.gates[0].type = GateType::Not;
  CHECK_THROWS_AS(logic::validate(inv), NetlistError);
  auto loop = n;
  loop.gates[0].inputs = {0, loop.gates[1].output};
  loop.gates[1].inputs = {1, loop.gates[0].output};
  CHECK_THROWS_AS(logic::validate(loop), NetlistError);
  auto ports = n;
  ports.outputs[1].name = "c";
  CHECK_THROWS_AS(logic::validate(ports), NetlistError);
}

TEST_CASE("half adder evaluation") {
  auto n = half_adder();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto out = logic::eval_netlist(n, {{"a", a}, {"b", b}});
      CHECK(out.at("c") == (a && b));
      CHECK(out.at("s") == (a != b));
    }
  auto words = logic::eval_words(n, {0b1100, 0b1010});
  CHECK((words[0] & 0xf) == 0b1000);
  CHECK((words[1] & 0xf) == 0b0110);
}

TEST_CASE("topological order puts producers first") {
  logic::GateNetlist n;
  auto a = n.add_input("a");
  auto b = n.add_input("b");
  auto t = n.add_wire("t");
  auto y = n.add_wire("y");
  n.gates.push_back({GateType::Or, {t, b}, y});
  n.gates.push_back({GateType::Not, {a}, t});
  n.add_output("y", y);
  CHECK(logic::topo_gate_order(n) == std::vector<size_t>{1, 0});
}

TEST_CASE("mapping targets") {
  auto t = majority();
  auto aoi = logic::sop_to_aoi_netlist(logic::minimize(t, "F"), t.inputs, "F");
  auto nand = logic::map_to_library(aoi, logic::MapTarget::Nand2);
  for (const auto& g : nand.gates) {
    CHECK(g.type == GateType::Nand);
    CHECK(g.inputs.size() == 2);
  }
  CHECK(nand.gates.size() == 6);
  CHECK(logic::check_equivalence(nand, t).equivalent);

  auto ha = half_adder();
  auto ha_aoi = logic::map_to_library(ha, logic::MapTarget::Aoi);
  for (const auto& g : ha_aoi.gates) CHECK((g.type == GateType::And || g.type == GateType::Or || g.type == GateType::Not));
  CHECK(logic::check_equivalence(ha, ha_aoi).equivalent);
  CHECK(logic::check_equivalence(ha, logic::map_to_library(ha, logic::MapTarget::Nand2)).equivalent);
  CHECK(ha_aoi.output_names() == ha.output_names());
}

TEST_CASE("every gate type maps to both targets") {
  for (auto type : {GateType::And, GateType::Or, GateType::Not, GateType::Xor, GateType::Nand, GateType::Nor,
                    GateType::Xnor}) {
    for (size_t fanin : {1, 2, 3, 4}) {
      if ((type == GateType::Not) != (fanin == 1)) continue;
      logic::GateNetlist n;
      std::vector<logic::NetId> ins;
      for (size_t i = 0; i < fanin; ++i) ins.push_back(n.add_input("i" + std::to_string(i)));
      n.add_output("y", n.add_gate(type, ins, n.add_wire("y")));
      CAPTURE(logic::gate_type_name(type));
      CAPTURE(fanin);
      CHECK(logic::check_equivalence(n, logic::map_to_library(n, logic::MapTarget::Aoi)).equivalent);
      CHECK(logic::check_equivalence(n, logic::map_to_library(n, logic::MapTarget::Nand2)).equivalent);
      CHECK(logic::check_equivalence(n, logic::split_fanin(n)).equivalent);
    }
  }
}

TEST_CASE("fan-in splitting") {
  logic::GateNetlist n;
  std::vector<logic::NetId> ins;
  for (int i = 0; i < 5; ++i) ins.push_back(n.add_input("x" + std::to_string(i)));
  n.add_output("y", n.add_gate(GateType::Nand, ins, n.add_wire("y")));
  auto s = logic::split_fanin(n);
  for (const auto& g : s.gates) CHECK(g.inputs.size() <= 2);
  CHECK(logic::check_equivalence(n, s).equivalent);
  CHECK(s.output_names() == std::vector<std::string>{"y"});
}

TEST_CASE("outputs aliasing inputs and constants") {
  logic::GateNetlist n;
  auto a = n.add_input("a");
  n.add_output("y", a);
  n.add_output("z", n.const1());
  n.add_output("w", n.const0());
  for (auto target : {logic::MapTarget::Aoi, logic::MapTarget::Nand2}) {
    auto m = logic::map_to_library(n, target);
    CHECK(logic::check_equivalence(n, m).equivalent);
  }
  auto out = logic::eval_netlist(n, {{"a", true}});
  CHECK(out.at("y"));
  CHECK(out.at("z"));
  CHECK_FALSE(out.at("w"));
}

TEST_CASE("equivalence counterexample") {
  auto ha = half_adder();
  auto broken = ha;
  broken.gates[1].type = GateType::Or;
  auto r = logic::check_equivalence(ha, broken);
  CHECK_FALSE(r.equivalent);
  CHECK(r.output == "s");
  CHECK(r.counterexample == std::vector<bool>{true, true});

  auto renamed = ha;
  renamed.outputs[0].name = "carry";
  CHECK_THROWS_AS(logic::check_equivalence(ha, renamed), NetlistError);

  logic::GateNetlist wide;
  std::vector<logic::NetId> ins;
  for (int i = 0; i < 17; ++i) ins.push_back(wide.add_input("x" + std::to_string(i)));
  wide.add_output("y", wide.add_gate(GateType::And, ins, wide.add_wire("y")));
  CHECK_THROWS_AS(logic::check_equivalence(wide, wide), SizeError);
}

TEST_CASE("multi-output AOI shares inverters") {
  auto t = testkit::table_from_mask(3, 0b11101000);
  std::vector<logic::SopCover> covers{logic::minimize(t, "f"), {Implicant{0b100, 0b000}}};
  auto n = logic::sop_to_aoi_netlist(covers, t.inputs, {"f", "g"});
  CHECK(n.output_names() == std::vector<std::string>{"f", "g"});
  CHECK(matches_table(n, t, 0));
  CHECK(n.count(GateType::Not) == 1);
  for (int a = 0; a < 2; ++a) CHECK(logic::eval_netlist(n, {{"a", a}, {"b", 0}, {"c", 1}}).at("g") == !a);
}

TEST_CASE("gate-level lowering of one-bit programs") {
  auto p = frontend::parse_source("module half_adder(in a: 1, in b: 1, out s: 1, out c: 1) { par { s = a ^ b; c = a & b; } }");
  auto n = logic::lower_to_gates(p);
  CHECK(n.count(GateType::And) == 1);
  CHECK(n.count(GateType::Xor) == 1);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto out = logic::eval_netlist(n, {{"a", a}, {"b", b}});
      CHECK(out.at("c") == (a && b));
      CHECK(out.at("s") == (a != b));
    }
  auto wide = frontend::parse_source("module m(in a: 2, out y: 2) { y = a; }");
  CHECK_THROWS_AS(logic::lower_to_gates(wide), SizeError);
}
