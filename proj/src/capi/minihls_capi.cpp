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

#include "minihls/minihls.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "dfg.hpp"
#include "emit.hpp"
#include "errors.hpp"
#include "frontend.hpp"
#include "hls.hpp"
#include "logic.hpp"
#include "rtl.hpp"
#include "sim.hpp"

using namespace minihls;

struct mh_program {
  frontend::Program program;
  frontend::WidthReport widths;
};

struct mh_design {
  std::shared_ptr<const mh_program> source;
  dfg::Dfg graph;
  hls::ResourceLibrary library;
  hls::Allocation allocation;
  hls::Schedule schedule;
  hls::Binding binding;
  rtl::RtlDesign rtl;
};

struct mh_table {
  logic::TruthTable table;
};

struct mh_netlist {
  logic::GateNetlist netlist;
};

namespace {

thread_local std::string last_error;

mh_status fail(mh_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
mh_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return MH_OK;
  } catch (const Error& e) {
    return fail(static_cast<mh_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MH_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string join_outputs(const std::vector<std::pair<std::string, uint64_t>>& outputs) {
  std::string out;
  for (const auto& [name, value] : outputs) {
    if (!out.empty()) out += ", ";
    out += name + "=" + std::to_string(value);
  }
  return out;
}

#define MH_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return fail(MH_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* mh_version(void) {
  static const std::string v = emit::version_string();
  return v.c_str();
}

const char* mh_status_name(mh_status status) {
  switch (status) {
    case MH_OK: return "Ok";
    case MH_ERR_IO: return "IoError";
    case MH_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case MH_ERR_INTERNAL: return "InternalError";
    default:
      if (status >= MH_ERR_LEX && status <= MH_ERR_NETLIST) return error_code_name(static_cast<ErrorCode>(status));
      return "UnknownStatus";
  }
}

const char* mh_last_error(void) { return last_error.c_str(); }

void mh_string_free(char* s) { std::free(s); }

mh_status mh_read_file(const char* path, char** out) {
  MH_REQUIRE(path && out);
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(MH_ERR_IO, std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return fail(MH_ERR_IO, std::string("cannot read '") + path + "'");
  return guarded([&] { *out = dup(ss.str()); });
}

// Programs ------------------------------------------------------------------------------

mh_status mh_program_parse(const char* source, mh_program** out) {
  MH_REQUIRE(source && out);
  *out = nullptr;
  return guarded([&] {
    auto p = std::make_unique<mh_program>();
    p->program = frontend::parse_source(source);
    frontend::check_semantics(p->program);
    p->widths = frontend::check_widths(p->program);
    *out = p.release();
  });
}

void mh_program_free(mh_program* program) { delete program; }

mh_status mh_program_name(const mh_program* program, char** out) {
  MH_REQUIRE(program && out);
  return guarded([&] { *out = dup(program->program.name); });
}

mh_status mh_program_pretty(const mh_program* program, char** out) {
  MH_REQUIRE(program && out);
  return guarded([&] { *out = dup(frontend::pretty_print(program->program)); });
}

size_t mh_program_operation_count(const mh_program* program) {
  if (!program) return 0;
  return dfg::build_dfg(program->program, program->widths).operation_count();
}

size_t mh_program_output_count(const mh_program* program) { return program ? program->program.outputs().size() : 0; }

mh_status mh_program_dot(const mh_program* program, int strength_reduce, char** out) {
  MH_REQUIRE(program && out);
  return guarded([&] {
    *out = dup(dfg::dfg_to_dot(dfg::build_dfg(program->program, program->widths, {strength_reduce != 0})));
  });
}

mh_status mh_program_interpret(const mh_program* program, const char* inputs, char** outputs,
                               uint64_t* source_cycles) {
  MH_REQUIRE(program && inputs && outputs);
  return guarded([&] {
    auto r = sim::interpret(program->program, sim::parse_inputs(inputs));
    if (source_cycles) *source_cycles = r.cycles;
    *outputs = dup(join_outputs(r.outputs));
  });
}

mh_status mh_program_lower(const mh_program* program, mh_netlist** out) {
  MH_REQUIRE(program && out);
  return guarded([&] { *out = new mh_netlist{logic::lower_to_gates(program->program)}; });
}

// Synthesis -----------------------------------------------------------------------------

mh_status mh_synthesize(const mh_program* program, const mh_synth_options* options, mh_design** out) {
  MH_REQUIRE(program && out);
  *out = nullptr;
  mh_synth_options defaults{nullptr, nullptr, 0, 1};
  const mh_synth_options& o = options ? *options : defaults;
  if (!o.auto_allocate && !o.resources)
    return fail(MH_ERR_INVALID_ARGUMENT, "a resource allocation is required unless auto-allocation is on");
  return guarded([&] {
    auto d = std::make_unique<mh_design>();
    // The width report is keyed by node address, so the copy needs its own.
    auto copy = std::make_shared<mh_program>();
    copy->program = program->program;
    copy->widths = frontend::check_widths(copy->program);
    d->source = copy;
    d->graph = dfg::build_dfg(d->source->program, d->source->widths, {o.strength_reduce != 0});
    d->library = hls::ResourceLibrary::defaults();
    if (o.latencies) d->library.apply_latencies(o.latencies);
    d->library.check_covers(d->graph);
    d->allocation = o.auto_allocate ? hls::auto_allocate(d->graph, d->library) : hls::parse_allocation(o.resources);
    d->schedule = hls::list_schedule(d->graph, d->library, d->allocation);
    d->binding = hls::bind(d->graph, d->schedule, d->library, d->allocation);
    d->rtl = rtl::build_design(d->source->program.name, d->graph, d->schedule, d->binding, d->library);
    *out = d.release();
  });
}

void mh_design_free(mh_design* design) { delete design; }

unsigned mh_design_length(const mh_design* design) { return design ? design->schedule.length : 0; }

unsigned mh_design_register_count(const mh_design* design) { return design ? design->binding.register_count : 0; }

unsigned mh_design_state_count(const mh_design* design) { return design ? design->rtl.controller.state_count : 0; }

mh_status mh_design_allocation(const mh_design* design, char** out) {
  MH_REQUIRE(design && out);
  return guarded([&] { *out = dup(hls::format_allocation(design->allocation)); });
}

mh_status mh_design_report(const mh_design* design, int json, char** out) {
  MH_REQUIRE(design && out);
  return guarded([&] {
    *out = dup(json ? hls::report_json(design->graph, design->schedule, design->binding, design->library)
                    : hls::report_text(design->graph, design->schedule, design->binding, design->library,
                                       design->allocation));
  });
}

mh_status mh_design_emit(const mh_design* design, mh_design_format format, char** out) {
  MH_REQUIRE(design && out);
  switch (format) {
    case MH_DESIGN_VERILOG:
      return guarded([&] { *out = dup(emit::emit_verilog_rtl(design->rtl, design->rtl.name)); });
    case MH_DESIGN_JSON: return guarded([&] { *out = dup(emit::design_to_json(design->rtl)); });
  }
  return fail(MH_ERR_INVALID_ARGUMENT, "unknown design format");
}

mh_status mh_design_simulate(const mh_design* design, const char* inputs, char** outputs, uint64_t* cycles,
                             uint64_t* datapath_cycles, char** trace) {
  MH_REQUIRE(design && inputs && outputs);
  return guarded([&] {
    auto r = sim::simulate_rtl(design->rtl, sim::parse_inputs(inputs), trace != nullptr);
    if (cycles) *cycles = r.cycles;
    if (datapath_cycles) *datapath_cycles = r.datapath_cycles;
    std::string text = join_outputs(r.outputs);
    if (trace) *trace = dup(sim::format_trace(design->rtl, r.trace));
    *outputs = dup(text);
  });
}

mh_status mh_design_cosim(const mh_design* design, uint64_t trials, uint64_t seed, int json, char** report,
                          int* passed) {
  MH_REQUIRE(design && report);
  return guarded([&] {
    auto r = sim::cosim(design->source->program, design->rtl, trials, seed);
    if (passed) *passed = r.passed() ? 1 : 0;
    if (!json) {
      *report = dup(sim::format_cosim(r));
      return;
    }
    std::ostringstream os;
    os << "{\n  \"vectors\": " << r.vectors << ",\n  \"mismatches\": " << r.mismatches.size()
       << ",\n  \"passed\": " << (r.passed() ? "true" : "false") << "\n}\n";
    *report = dup(os.str());
  });
}

// Truth tables --------------------------------------------------------------------------

mh_status mh_table_read_pla(const char* text, mh_table** out) {
  MH_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] { *out = new mh_table{emit::read_pla(text)}; });
}

void mh_table_free(mh_table* table) { delete table; }

mh_status mh_table_write_pla(const mh_table* table, char** out) {
  MH_REQUIRE(table && out);
  return guarded([&] { *out = dup(emit::write_pla(table->table)); });
}

size_t mh_table_output_count(const mh_table* table) { return table ? table->table.outputs.size() : 0; }

mh_status mh_table_minimize(const mh_table* table, mh_netlist** out, mh_minimize_stats* stats, char** covers) {
  MH_REQUIRE(table && out);
  *out = nullptr;
  return guarded([&] {
    const auto& t = table->table;
    mh_minimize_stats st{};
    std::vector<logic::SopCover> minimized;
    std::string text;
    for (const auto& name : t.outputs) {
      auto canonical = logic::canonical_sop(t, name);
      auto cover = logic::minimize(t, name);
      st.products_before += static_cast<unsigned>(canonical.size());
      st.products_after += static_cast<unsigned>(cover.size());
      st.literals_before += logic::literal_count(canonical);
      st.literals_after += logic::literal_count(cover);
      text += name + " = " + logic::to_string(cover, t.inputs) + "\n";
      minimized.push_back(std::move(cover));
    }
    auto netlist = std::make_unique<mh_netlist>(mh_netlist{logic::sop_to_aoi_netlist(minimized, t.inputs, t.outputs)});
    auto check = logic::check_equivalence(netlist->netlist, t);
    if (!check.equivalent) throw NetlistError("minimized netlist differs from the table at output " + check.output);
    if (stats) *stats = st;
    if (covers) *covers = dup(text);
    *out = netlist.release();
  });
}

mh_status mh_table_check(const mh_table* table, const mh_netlist* netlist, int* equivalent) {
  MH_REQUIRE(table && netlist && equivalent);
  return guarded([&] { *equivalent = logic::check_equivalence(netlist->netlist, table->table).equivalent ? 1 : 0; });
}

// Netlists ------------------------------------------------------------------------------

void mh_netlist_free(mh_netlist* netlist) { delete netlist; }

mh_status mh_netlist_read_verilog(const char* text, mh_netlist** out) {
  MH_REQUIRE(text && out);
  *out = nullptr;
  return guarded([&] { *out = new mh_netlist{emit::read_verilog_netlist(text)}; });
}

mh_status mh_netlist_map(const mh_netlist* netlist, mh_map_target target, mh_netlist** out) {
  MH_REQUIRE(netlist && out);
  *out = nullptr;
  if (target != MH_MAP_AOI && target != MH_MAP_NAND2) return fail(MH_ERR_INVALID_ARGUMENT, "unknown map target");
  return guarded([&] {
    auto mapped = logic::map_to_library(netlist->netlist,
                                        target == MH_MAP_NAND2 ? logic::MapTarget::Nand2 : logic::MapTarget::Aoi);
    auto check = logic::check_equivalence(netlist->netlist, mapped);
    if (!check.equivalent) throw NetlistError("mapped netlist differs at output " + check.output);
    *out = new mh_netlist{std::move(mapped)};
  });
}

mh_status mh_netlist_split(const mh_netlist* netlist, mh_netlist** out) {
  MH_REQUIRE(netlist && out);
  *out = nullptr;
  return guarded([&] { *out = new mh_netlist{logic::split_fanin(netlist->netlist)}; });
}

size_t mh_netlist_gate_count(const mh_netlist* netlist) { return netlist ? netlist->netlist.gates.size() : 0; }

mh_status mh_netlist_emit(const mh_netlist* netlist, mh_netlist_format format, const char* name, char** out) {
  MH_REQUIRE(netlist && name && out);
  switch (format) {
    case MH_NETLIST_VERILOG: return guarded([&] { *out = dup(emit::emit_verilog_netlist(netlist->netlist, name)); });
    case MH_NETLIST_VHDL: return guarded([&] { *out = dup(emit::emit_vhdl_structural(netlist->netlist, name)); });
    case MH_NETLIST_JSON: return guarded([&] { *out = dup(emit::netlist_to_json(netlist->netlist, name)); });
  }
  return fail(MH_ERR_INVALID_ARGUMENT, "unknown netlist format");
}

mh_status mh_netlist_equivalent(const mh_netlist* a, const mh_netlist* b, int* equivalent) {
  MH_REQUIRE(a && b && equivalent);
  return guarded([&] { *equivalent = logic::check_equivalence(a->netlist, b->netlist).equivalent ? 1 : 0; });
}

}  // extern "C"
