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

// Shared test helpers: random program and graph generators, and reference
// implementations that the library results are checked against.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dfg.hpp"
#include "hls.hpp"
#include "logic.hpp"
#include "sim.hpp"

namespace minihls::testkit {

struct ProgramShape {
  unsigned max_ops = 12;
  unsigned max_width = 8;
  bool structured = true;  // allow par blocks and nested seq
};

// BDL source of a random well-formed program (it parses, passes the semantic
// checks and the width rule).
std::string random_program(uint64_t seed, const ProgramShape& shape = {});

// Random acyclic graph of 1..max_ops operations over a few inputs; every
// sink feeds an output.
dfg::Dfg random_dag(sim::SplitMix64& rng, unsigned max_ops);

// Exhaustive search for the shortest resource-feasible schedule.
unsigned optimal_schedule_length(const dfg::Dfg& g, const hls::ResourceLibrary& lib, const hls::Allocation& alloc);

// Longest latency-weighted path, computed by depth-first search.
unsigned longest_path(const dfg::Dfg& g, const hls::ResourceLibrary& lib);

// Every prime implicant, found by testing all 3^n cubes.
std::vector<logic::Implicant> brute_force_primes(const logic::TruthTable& t, size_t output);

// Fewest products of any sum-of-products cover, by exhaustive subset search
// over the prime implicants.
size_t minimum_cover_size(const logic::TruthTable& t, size_t output);

// Largest number of intervals alive in the same control step.
unsigned max_overlap(const std::vector<hls::Interval>& intervals);

// Direct evaluation of a BDL program by walking its statements; an
// alternative to sim::interpret.
std::vector<std::pair<std::string, uint64_t>> reference_eval(const frontend::Program& p, const sim::InputVector& in);

std::string read_file(const std::string& path);

// Compares `actual` with tests/golden/<name>. With MINIHLS_UPDATE_GOLDEN set in
// the environment the file is rewritten instead. Returns an empty string on
// match, otherwise a description of the first difference.
std::string golden_diff(const std::string& name, const std::string& actual);

// Truth table of one output of a function given as a row bitmask.
logic::TruthTable table_from_mask(unsigned inputs, uint64_t mask);

}  // namespace minihls::testkit
