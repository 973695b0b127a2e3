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

// Allocation, scheduling and binding.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dfg.hpp"

namespace minihls::hls {

using dfg::Dfg;
using dfg::NodeId;
using dfg::NodeKind;

struct ResourceSpec {
  std::string name;
  unsigned latency = 1;
  double area = 0.0;
};

class ResourceLibrary {
 public:
  // One unit-latency entry per operation kind.
  static ResourceLibrary defaults();

  void set(NodeKind kind, ResourceSpec spec) { specs_[kind] = std::move(spec); }
  bool has(NodeKind kind) const { return specs_.count(kind) != 0; }
  const ResourceSpec& spec(NodeKind kind) const;
  // 0 for Input/Const/Output.
  unsigned latency(NodeKind kind) const;
  dfg::LatencyMap latencies() const;

  // Throws AllocationError naming the first operation kind without an entry.
  void check_covers(const Dfg& g) const;

  // Applies "mul=2,add=3" style latency overrides. Throws InputError.
  void apply_latencies(std::string_view spec);

 private:
  std::map<NodeKind, ResourceSpec> specs_;
};

// Instance count per resource kind.
using Allocation = std::map<NodeKind, unsigned>;

// Parses "mul=2,add=1". Throws InputError on unknown kinds or bad counts.
Allocation parse_allocation(std::string_view text);
std::string format_allocation(const Allocation& alloc);

// Throws AllocationError naming the first kind used by `g` with no instance.
void check_allocation(const Dfg& g, const Allocation& alloc);

struct Schedule {
  std::map<NodeId, unsigned> start;  // operation nodes only, 1-based steps
  unsigned length = 0;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

Schedule asap(const Dfg& g, const ResourceLibrary& lib);

// Throws DeadlineError when deadline < critical path.
Schedule alap(const Dfg& g, const ResourceLibrary& lib, unsigned deadline);

std::map<NodeId, unsigned> mobility(const Schedule& asap_schedule, const Schedule& alap_schedule);

// Resource-constrained list scheduling. Ready operations are served in
// (ascending mobility, ascending id) order until each kind's budget is used.
Schedule list_schedule(const Dfg& g, const ResourceLibrary& lib, const Allocation& alloc);

// Per-kind maximum number of operations executing in the same ASAP step.
Allocation auto_allocate(const Dfg& g, const ResourceLibrary& lib);

struct FuInstance {
  NodeKind kind = NodeKind::Add;
  unsigned instance = 1;  // 1-based

  friend bool operator==(const FuInstance&, const FuInstance&) = default;
  friend auto operator<=>(const FuInstance&, const FuInstance&) = default;
};

// Closed step interval [birth, death].
struct Interval {
  unsigned birth = 0;
  unsigned death = 0;

  bool overlaps(const Interval& o) const { return birth <= o.death && o.birth <= death; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Binding {
  std::map<NodeId, FuInstance> fu_bind;
  std::map<NodeId, unsigned> reg_bind;   // operation results only, 1-based
  std::map<NodeId, Interval> lifetimes;  // consumed values, inputs included
  unsigned register_count = 0;
};

// Left-edge assignment of operations onto numbered instances.
Binding bind_functional_units(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, const Allocation& alloc);

// Lifetimes plus left-edge register assignment. An operation result lives
// from start + latency to its last consumer's start (length + 1 when it
// feeds an output). Input ports are held by the environment and get a
// lifetime but no register.
Binding bind_registers(const Dfg& g, const Schedule& s, const ResourceLibrary& lib);

// Both halves merged.
Binding bind(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, const Allocation& alloc);

// Execution interval [start, start + latency - 1] of an operation.
Interval execution_interval(const Dfg& g, const Schedule& s, const ResourceLibrary& lib, NodeId n);

// Invariant audits; empty result means the invariant holds.
std::vector<std::string> schedule_violations(const Dfg& g, const ResourceLibrary& lib, const Schedule& s,
                                             const Allocation* alloc);
std::vector<std::string> binding_violations(const Dfg& g, const ResourceLibrary& lib, const Schedule& s,
                                            const Binding& b);

// Where an operand value comes from at run time.
enum class SourceKind { Input, Const, Register, Unit };

struct Source {
  SourceKind kind = SourceKind::Const;
  unsigned index = 0;   // input port ordinal / register index / (unused for Const)
  FuInstance unit{};    // SourceKind::Unit
  uint64_t value = 0;   // Const, already reduced to `bits`
  unsigned bits = 1;

  friend bool operator==(const Source&, const Source&) = default;
};

// Source feeding operand edge `e` of an operation or output.
Source operand_source(const Dfg& g, const Binding& b, const dfg::Edge& e);

struct CostReport {
  unsigned latency = 0;
  std::map<NodeKind, unsigned> instances;
  unsigned registers = 0;
  unsigned mux_inputs = 0;
  double area = 0.0;
};

CostReport estimate(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib);

// {"steps":[...],"registers":[...],"length":N} with stable key order.
std::string report_json(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib);
std::string report_text(const Dfg& g, const Schedule& s, const Binding& b, const ResourceLibrary& lib,
                        const Allocation& alloc);

}  // namespace minihls::hls
