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

// Behavioral interpretation, cycle-accurate RTL simulation and
// co-simulation between the two.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "frontend.hpp"
#include "rtl.hpp"

namespace minihls::sim {

using InputVector = std::map<std::string, uint64_t>;

struct TraceEntry {
  uint64_t cycle = 0;
  unsigned state = 0;
  std::vector<int> mux_select;
  std::vector<bool> reg_enable;
  std::vector<int> unit_op;                // operation started on each unit
  std::vector<uint64_t> unit_result;       // unit outputs during the cycle
  std::vector<uint64_t> registers;         // register contents after the edge
  bool done = false;
};

struct SimResult {
  std::vector<std::pair<std::string, uint64_t>> outputs;  // declaration order
  uint64_t cycles = 0;           // interpreter: source cycles; RTL: start to done
  uint64_t datapath_cycles = 0;  // RTL only: control steps executed
  std::vector<TraceEntry> trace;

  uint64_t output(const std::string& name) const;
};

// Clock cycles the RTL controller spends in idle accepting start.
inline constexpr uint64_t kStartOverhead = 1;

// Checks that `inputs` names exactly the `in` ports with in-range values.
// Throws InputError.
void check_inputs(const frontend::Program& program, const InputVector& inputs);

// Parses "a=3,b=0x2". Throws InputError.
InputVector parse_inputs(std::string_view text);

// Values modulo 2^w of the destination; Assign = 1 cycle, Seq = sum,
// Par = max. Each cycle's assignments read the values committed before it.
SimResult interpret(const frontend::Program& program, const InputVector& inputs);

// Reset, one start pulse, run to done. Throws WatchdogError when done does
// not rise within 10 * (length + 2) cycles.
SimResult simulate_rtl(const rtl::RtlDesign& design, const InputVector& inputs, bool trace = false);

std::string format_trace(const rtl::RtlDesign& design, const std::vector<TraceEntry>& trace);

// splitmix64
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

 private:
  uint64_t state_;
};

struct Mismatch {
  InputVector inputs;
  std::vector<std::pair<std::string, uint64_t>> expected;
  std::vector<std::pair<std::string, uint64_t>> actual;
};

struct CosimReport {
  uint64_t vectors = 0;
  std::vector<Mismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

// All-zeros and all-ones vectors, then `trials` seeded random vectors.
std::vector<InputVector> cosim_vectors(const frontend::Program& program, uint64_t trials, uint64_t seed);

CosimReport cosim(const frontend::Program& program, const rtl::RtlDesign& design, uint64_t trials, uint64_t seed);

std::string format_cosim(const CosimReport& report);

}  // namespace minihls::sim
