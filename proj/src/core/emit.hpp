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

// Text serialization: Verilog gate netlists and RTL, structural VHDL, JSON
// and the Berkeley PLA subset.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "logic.hpp"
#include "rtl.hpp"

namespace minihls::emit {

inline constexpr const char* kToolName = "minihls";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportFormat = 1;   // schedule/binding report JSON
inline constexpr int kNetlistFormat = 1;  // netlist JSON
inline constexpr int kDesignFormat = 1;   // RTL design JSON
inline constexpr int kPlaFormat = 1;

// "minihls 1.0.0 (report-json/1, netlist-json/1, design-json/1, pla/1)"
std::string version_string();

uint64_t fnv1a(std::string_view text);

enum class Hdl { Verilog, Vhdl };

// Maps arbitrary names onto legal, pairwise distinct identifiers, avoiding
// the target language's reserved words. The same input always maps to the
// same output within one table.
class NameTable {
 public:
  explicit NameTable(Hdl hdl);
  std::string claim(const std::string& name);  // fresh identifier derived from name
  std::string get(const std::string& name);    // claim once, then reuse

 private:
  std::string legalize(const std::string& name) const;
  std::string key(const std::string& id) const;

  Hdl hdl_;
  std::set<std::string> used_;
  std::map<std::string, std::string> assigned_;
};

std::string emit_verilog_netlist(const logic::GateNetlist& netlist, const std::string& module_name);

// Every gate must have the fan-in of its two-input component (NOT: one).
// Throws FanInError otherwise.
std::string emit_vhdl_structural(const logic::GateNetlist& netlist, const std::string& entity_name);

std::string emit_verilog_rtl(const rtl::RtlDesign& design, const std::string& module_name);

std::string netlist_to_json(const logic::GateNetlist& netlist, const std::string& name);
std::string design_to_json(const rtl::RtlDesign& design);

// Reads back the gate-instantiation subset written by emit_verilog_netlist.
// Throws NetlistError.
logic::GateNetlist read_verilog_netlist(std::string_view text);

// Throws PlaFormatError (or SizeError above the table input limit).
logic::TruthTable read_pla(std::string_view text);
std::string write_pla(const logic::TruthTable& table);

}  // namespace minihls::emit
