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

// Two-level logic: truth tables, Quine-McCluskey minimization, gate
// netlists, technology mapping and exhaustive equivalence checking.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace minihls::frontend {
struct Program;
}

namespace minihls::logic {

inline constexpr unsigned kMaxTableInputs = 10;
inline constexpr unsigned kMaxEquivalenceInputs = 16;

// Row index convention: the first input is the most significant bit, so for
// inputs (A, B, C) row 3 = 011 = A'BC.
struct TruthTable {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::vector<uint32_t>> minterms;  // per output, ascending, unique

  size_t output_index(std::string_view name) const;  // throws InputError
  bool value(size_t output, uint32_t row) const;
  uint32_t rows() const { return uint32_t{1} << inputs.size(); }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

// Sorts/dedups minterms and checks ranges and name uniqueness. Throws
// SizeError for more than kMaxTableInputs inputs, InputError otherwise.
void normalize(TruthTable& table);

struct Implicant {
  uint32_t care = 0;    // 1 = literal present
  uint32_t values = 0;  // polarity where cared; 0 elsewhere

  bool covers(uint32_t row) const { return (row & care) == values; }
  unsigned literals() const { return static_cast<unsigned>(__builtin_popcount(care)); }

  friend bool operator==(const Implicant&, const Implicant&) = default;
  friend auto operator<=>(const Implicant&, const Implicant&) = default;
};

// "A'BC", "1" for the empty product. Multi-character names are separated by
// spaces.
std::string to_string(const Implicant& imp, const std::vector<std::string>& inputs);

using SopCover = std::vector<Implicant>;

std::string to_string(const SopCover& cover, const std::vector<std::string>& inputs);
unsigned literal_count(const SopCover& cover);
bool cover_value(const SopCover& cover, uint32_t row);

// One full-care implicant per minterm, ascending.
SopCover canonical_sop(const TruthTable& table, std::string_view output);

// Prime implicants by iterated adjacent merging, sorted ascending.
// Throws SizeError for more than kMaxTableInputs inputs.
std::vector<Implicant> qm_primes(const TruthTable& table, std::string_view output);

// Essential primes first, then greedy by (most newly covered minterms,
// fewest literals, smallest (care, values)).
SopCover select_cover(const std::vector<Implicant>& primes, const TruthTable& table, std::string_view output);

SopCover minimize(const TruthTable& table, std::string_view output);

// Gate netlists -----------------------------------------------------------------

enum class GateType { And, Or, Not, Xor, Nand, Nor, Xnor };

const char* gate_type_name(GateType type);  // "and", "or", ...
std::optional<GateType> gate_type_from_name(std::string_view name);

using NetId = uint32_t;

enum class NetKind { Wire, Input, Const0, Const1 };

struct Net {
  std::string name;
  NetKind kind = NetKind::Wire;
  friend bool operator==(const Net&, const Net&) = default;
};

struct Gate {
  GateType type = GateType::And;
  std::vector<NetId> inputs;
  NetId output = 0;
  friend bool operator==(const Gate&, const Gate&) = default;
};

struct PrimaryOutput {
  std::string name;
  NetId net = 0;
  friend bool operator==(const PrimaryOutput&, const PrimaryOutput&) = default;
};

// A primary output may name a net other than its own (an alias of an input,
// a constant, or a shared internal net).
struct GateNetlist {
  std::vector<Net> nets;
  std::vector<NetId> inputs;
  std::vector<PrimaryOutput> outputs;
  std::vector<Gate> gates;

  NetId add_input(std::string name);
  NetId add_wire(std::string name);
  NetId const0();
  NetId const1();
  NetId add_gate(GateType type, std::vector<NetId> inputs, NetId output);
  void add_output(std::string name, NetId net) { outputs.push_back({std::move(name), net}); }

  std::optional<NetId> find_net(std::string_view name) const;
  std::vector<std::string> input_names() const;
  std::vector<std::string> output_names() const;
  size_t count(GateType type) const;

  friend bool operator==(const GateNetlist&, const GateNetlist&) = default;
};

// Single driver per net, gate arity, no combinational cycles, distinct port
// names. Throws NetlistError.
void validate(const GateNetlist& netlist);

// Gate indices, producers first; ties keep the stored order.
std::vector<size_t> topo_gate_order(const GateNetlist& netlist);

std::map<std::string, bool> eval_netlist(const GateNetlist& netlist, const std::map<std::string, bool>& assignment);

// Bit-parallel evaluation: one 64-bit word per primary input, one word per
// primary output (in declaration order).
std::vector<uint64_t> eval_words(const GateNetlist& netlist, const std::vector<uint64_t>& input_words);

// Shared inverters, one AND per multi-literal product, one OR per output.
GateNetlist sop_to_aoi_netlist(const SopCover& cover, const std::vector<std::string>& inputs, const std::string& output);
GateNetlist sop_to_aoi_netlist(const std::vector<SopCover>& covers, const std::vector<std::string>& inputs,
                               const std::vector<std::string>& outputs);

enum class MapTarget { Nand2, Aoi };

// Nand2: only 2-input NAND gates. Aoi: AND/OR/NOT with unrestricted fan-in.
GateNetlist map_to_library(const GateNetlist& netlist, MapTarget target);

// Rewrites every gate with more than two inputs into a balanced tree of
// two-input gates.
GateNetlist split_fanin(const GateNetlist& netlist);

struct EquivalenceResult {
  bool equivalent = true;
  // Lexicographically smallest differing assignment, in the first netlist's
  // input order.
  std::vector<bool> counterexample;
  std::string output;  // first differing output
};

// Exhaustive comparison; throws SizeError above kMaxEquivalenceInputs inputs
// and NetlistError if the port names differ.
EquivalenceResult check_equivalence(const GateNetlist& a, const GateNetlist& b);
EquivalenceResult check_equivalence(const GateNetlist& a, const TruthTable& table);

// Direct gate-level lowering of a program whose variables are all one bit
// wide (add/sub -> xor, mul -> and). Throws SizeError otherwise.
GateNetlist lower_to_gates(const frontend::Program& program);

}  // namespace minihls::logic
