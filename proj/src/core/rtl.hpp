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

// Register-transfer level design: datapath plus a binary-encoded FSM that
// walks the control steps once per start pulse.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfg.hpp"
#include "hls.hpp"

namespace minihls::rtl {

using hls::Source;
using hls::SourceKind;

// What feeds one functional-unit operand port or one register data input.
// A single source is a plain net; two or more go through `mux`.
struct Drive {
  std::vector<Source> sources;
  std::optional<size_t> mux;
};

struct FunctionalUnit {
  dfg::NodeKind kind = dfg::NodeKind::Add;
  unsigned instance = 1;
  unsigned width = 1;
  unsigned latency = 1;  // > 1: operands are captured in the first step
  std::string name;      // "mul1"
  std::vector<Drive> operands;
};

struct Register {
  unsigned index = 1;
  unsigned width = 1;
  std::string name;  // "r1"
  Drive input;
};

struct Mux {
  std::string name;
  unsigned width = 1;
  size_t input_count = 2;
  unsigned select_width = 1;
};

struct Port {
  std::string name;
  unsigned width = 1;
  Source source{};  // outputs only
};

struct Datapath {
  std::vector<FunctionalUnit> units;
  std::vector<Register> registers;
  std::vector<Mux> muxes;
  std::vector<Port> inputs;
  std::vector<Port> outputs;
};

struct ControlWord {
  std::vector<int> mux_select;     // per mux; -1 = unused this step
  std::vector<bool> reg_enable;    // per register
  std::vector<bool> unit_capture;  // per unit, multi-cycle operand latch
  std::vector<int> unit_op;        // per unit, operation starting this step (-1: none); trace only
  bool finish = false;             // return to idle and raise done at the end of this state
};

// State 0 is idle; state k (1..length) executes control step k. The last
// step returns to idle with done raised. An empty schedule finishes straight
// from idle.
struct ControllerFsm {
  unsigned state_count = 1;
  unsigned state_bits = 1;
  std::vector<ControlWord> words;  // one per state
};

struct RtlDesign {
  std::string name;
  unsigned length = 0;
  Datapath datapath;
  ControllerFsm controller;
};

Datapath build_datapath(const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                        const hls::ResourceLibrary& lib);

ControllerFsm build_controller(const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                               const hls::ResourceLibrary& lib, const Datapath& datapath);

RtlDesign build_design(const std::string& name, const dfg::Dfg& g, const hls::Schedule& s, const hls::Binding& b,
                       const hls::ResourceLibrary& lib);

struct RtlStats {
  unsigned functional_units = 0;
  unsigned registers = 0;
  unsigned register_bits = 0;
  unsigned intermediate_registers = 0;  // registers feeding some functional unit
  unsigned muxes = 0;
  unsigned mux_inputs = 0;
  unsigned states = 0;
};

RtlStats rtl_stats(const RtlDesign& design);

// ceil(log2(n)), at least 1.
unsigned select_bits(size_t n);

// Problems with the structural invariants (mux arity, select ranges,
// control-word widths); empty when the design is well formed.
std::vector<std::string> design_violations(const RtlDesign& design);

}  // namespace minihls::rtl
