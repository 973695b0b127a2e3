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

// Dataflow graph of a checked BDL program.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frontend.hpp"

namespace minihls::dfg {

using NodeId = uint32_t;

enum class NodeKind { Input, Const, Add, Sub, Mul, And, Or, Xor, Not, Shl, Shr, Output };

const char* kind_name(NodeKind kind);  // lower-case resource name: "mul", "input", ...
std::optional<NodeKind> kind_from_name(std::string_view name);
bool is_operation(NodeKind kind);
unsigned arity(NodeKind kind);

// Every operation kind, in declaration order.
const std::vector<NodeKind>& operation_kinds();

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::Const;
  unsigned width = 1;
  uint64_t value = 0;  // Const
  std::string name;    // Input / Output
};

// `bits` is how many low bits of the producer's value reach the consumer;
// the consumer zero-extends them to its own width.
struct Edge {
  NodeId producer = 0;
  NodeId consumer = 0;
  unsigned position = 0;
  unsigned bits = 1;
};

struct Dfg {
  std::vector<Node> nodes;  // nodes[i].id == i
  std::vector<Edge> edges;
  std::vector<std::pair<std::string, NodeId>> outputs;  // port name -> Output node, port order
  // Def-use pairs that cross statement boundaries (write-before-read order).
  std::vector<std::pair<NodeId, NodeId>> cycle_barriers;

  const Node& node(NodeId id) const { return nodes.at(id); }
  bool is_op(NodeId id) const { return is_operation(nodes.at(id).kind); }
  size_t operation_count() const;

  // Operand edges of `id`, ordered by position.
  std::vector<Edge> operands(NodeId id) const;
  // Consumer node ids of `id` (one entry per edge).
  std::vector<NodeId> consumers(NodeId id) const;
};

struct BuildOptions {
  bool strength_reduce = false;  // x * 2^k  ->  x << k
};

Dfg build_dfg(const frontend::Program& program, const frontend::WidthReport& widths,
              const BuildOptions& options = {});

// Checks arity, edge endpoints, output mapping and acyclicity. Throws
// CycleError or NetlistError.
void validate(const Dfg& dfg);

// Producers before consumers; ties broken by ascending id. Throws CycleError.
std::vector<NodeId> topo_order(const Dfg& dfg);

using LatencyMap = std::map<NodeKind, unsigned>;

// Longest latency-weighted path over operation nodes. Kinds missing from
// `latencies` count as 1 cycle.
uint64_t critical_path(const Dfg& dfg, const LatencyMap& latencies);

std::string dfg_to_dot(const Dfg& dfg);

}  // namespace minihls::dfg
