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

// minihls command-line driver. Talks to the toolchain only through the C API.

#include <minihls/minihls.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kVerify = 3 };

// Thrown to unwind with an exit code after the diagnostic is printed.
struct Abort {
  int code;
};

int exit_code(mh_status s) { return s == MH_ERR_IO ? kIo : kUsage; }

void check(mh_status s, const std::string& context) {
  if (s == MH_OK) return;
  std::cerr << "error: " << context << ": " << mh_last_error() << "\n";
  throw Abort{exit_code(s)};
}

struct Str {
  char* p = nullptr;
  ~Str() { mh_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
};
using Program = Handle<mh_program, mh_program_free>;
using Design = Handle<mh_design, mh_design_free>;
using Table = Handle<mh_table, mh_table_free>;
using Netlist = Handle<mh_netlist, mh_netlist_free>;

std::string read_file(const std::string& path) {
  Str text;
  check(mh_read_file(path.c_str(), &text.p), path);
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: " << path << ": cannot write file\n";
    throw Abort{kIo};
  }
}

void load_program(const std::string& path, Program& program) {
  std::string source = read_file(path);
  check(mh_program_parse(source.c_str(), &program.p), path);
}

struct SynthFlags {
  std::string resources;
  std::string latencies;
  bool strength_reduce = false;
  bool auto_allocate = false;
};

void add_synth_flags(CLI::App* cmd, SynthFlags& f) {
  cmd->add_option("--resources", f.resources, "Allocation, e.g. mul=2,add=1");
  cmd->add_option("--latencies", f.latencies, "Latency overrides, e.g. mul=2");
  cmd->add_flag("--strength-reduce", f.strength_reduce, "Rewrite multiplications by powers of two as shifts");
  cmd->add_flag("--auto-allocate", f.auto_allocate, "Allocate the peak ASAP concurrency of each kind");
}

void synthesize(const std::string& path, const Program& program, const SynthFlags& f, bool default_auto,
                Design& design) {
  bool automatic = f.auto_allocate || (default_auto && f.resources.empty());
  if (!automatic && f.resources.empty()) {
    std::cerr << "error: " << path << ": no allocation given (use --resources or --auto-allocate)\n";
    throw Abort{kUsage};
  }
  mh_synth_options o{f.resources.c_str(), f.latencies.empty() ? nullptr : f.latencies.c_str(),
                     f.strength_reduce ? 1 : 0, automatic ? 1 : 0};
  check(mh_synthesize(program.p, &o, &design.p), path);
}

nlohmann::ordered_json outputs_json(const std::string& joined) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  size_t pos = 0;
  while (pos < joined.size()) {
    size_t end = joined.find(", ", pos);
    std::string item = joined.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    auto eq = item.find('=');
    j[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
    if (end == std::string::npos) break;
    pos = end + 2;
  }
  return j;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

// synth --------------------------------------------------------------------------------

struct SynthCmd {
  std::string file, emit = "verilog", out, level = "rtl";
  SynthFlags flags;
  bool json = false;

  int run() {
    Program program;
    load_program(file, program);
    const std::string ext = emit == "verilog" ? ".v" : emit == "vhdl" ? ".vhd" : ".json";
    const std::string target = out.empty() ? replace_extension(std::filesystem::path(file).filename().string(), ext) : out;
    if (level == "gate") return gate_level(program, target);
    if (emit == "vhdl") {
      std::cerr << "error: " << file << ": VHDL output is structural only; use --level gate for one-bit programs\n";
      return kUsage;
    }
    Design design;
    synthesize(file, program, flags, false, design);
    Str text, report, summary;
    check(mh_design_emit(design.p, emit == "verilog" ? MH_DESIGN_VERILOG : MH_DESIGN_JSON, &text.p), file);
    check(mh_design_report(design.p, 1, &report.p), file);
    check(mh_design_report(design.p, json ? 1 : 0, &summary.p), file);
    const std::string report_path = replace_extension(target, ".report.json");
    write_file(target, text.str());
    write_file(report_path, report.str());
    std::cout << summary.str();
    if (!json) std::cout << "wrote " << target << ", " << report_path << "\n";
    return kOk;
  }

  int gate_level(const Program& program, const std::string& target) {
    Netlist lowered, split;
    check(mh_program_lower(program.p, &lowered.p), file);
    check(mh_netlist_split(lowered.p, &split.p), file);
    Str name, text;
    check(mh_program_name(program.p, &name.p), file);
    mh_netlist_format fmt = emit == "verilog" ? MH_NETLIST_VERILOG : emit == "vhdl" ? MH_NETLIST_VHDL : MH_NETLIST_JSON;
    check(mh_netlist_emit(split.p, fmt, name.p, &text.p), file);
    write_file(target, text.str());
    if (json) {
      nlohmann::ordered_json j;
      j["gates"] = mh_netlist_gate_count(split.p);
      j["output"] = target;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "gates: " << mh_netlist_gate_count(split.p) << "\nwrote " << target << "\n";
    }
    return kOk;
  }
};

// schedule -----------------------------------------------------------------------------

struct ScheduleCmd {
  std::string file;
  SynthFlags flags;
  bool json = false, dot = false;

  int run() {
    Program program;
    load_program(file, program);
    if (dot) {
      Str text;
      check(mh_program_dot(program.p, flags.strength_reduce ? 1 : 0, &text.p), file);
      std::cout << text.str();
      return kOk;
    }
    Design design;
    synthesize(file, program, flags, false, design);
    Str report;
    check(mh_design_report(design.p, json ? 1 : 0, &report.p), file);
    std::cout << report.str();
    return kOk;
  }
};

// minimize -----------------------------------------------------------------------------

struct MinimizeCmd {
  std::string file, emit, map = "aoi", out, name;
  bool json = false;

  int run() {
    std::string text = read_file(file);
    Table table;
    check(mh_table_read_pla(text.c_str(), &table.p), file);
    Netlist aoi, mapped;
    mh_minimize_stats st{};
    Str covers;
    check(mh_table_minimize(table.p, &aoi.p, &st, &covers.p), file);
    check(mh_netlist_map(aoi.p, map == "nand2" ? MH_MAP_NAND2 : MH_MAP_AOI, &mapped.p), file);
    int equivalent = 0;
    check(mh_table_check(table.p, mapped.p, &equivalent), file);
    if (!equivalent) {
      std::cerr << "error: " << file << ": mapped netlist is not equivalent to the table\n";
      return kVerify;
    }

    std::string emitted;
    if (!emit.empty()) {
      const std::string module = name.empty() ? std::filesystem::path(file).stem().string() : name;
      Str s;
      if (emit == "pla") {
        check(mh_table_write_pla(table.p, &s.p), file);
      } else if (emit == "vhdl") {
        Netlist split;
        check(mh_netlist_split(mapped.p, &split.p), file);
        check(mh_netlist_emit(split.p, MH_NETLIST_VHDL, module.c_str(), &s.p), file);
      } else {
        check(mh_netlist_emit(mapped.p, MH_NETLIST_VERILOG, module.c_str(), &s.p), file);
      }
      emitted = s.str();
      if (!out.empty()) write_file(out, emitted);
    }

    if (json) {
      nlohmann::ordered_json j;
      j["products_before"] = st.products_before;
      j["products_after"] = st.products_after;
      j["literals_before"] = st.literals_before;
      j["literals_after"] = st.literals_after;
      j["gates"] = mh_netlist_gate_count(mapped.p);
      j["map"] = map;
      j["equivalent"] = true;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << covers.str();
      std::cout << st.products_before << " products → " << st.products_after << " products\n";
      std::cout << st.literals_before << " literals → " << st.literals_after << " literals\n";
      std::cout << mh_netlist_gate_count(mapped.p) << " gates (" << map << "), equivalence verified\n";
    }
    if (!emitted.empty() && out.empty() && !json) std::cout << emitted;
    return kOk;
  }
};

// sim / cosim --------------------------------------------------------------------------

struct SimCmd {
  std::string file, inputs;
  SynthFlags flags;
  bool trace = false, json = false;

  int run() {
    Program program;
    load_program(file, program);
    Str interp;
    uint64_t source_cycles = 0;
    check(mh_program_interpret(program.p, inputs.c_str(), &interp.p, &source_cycles), file);
    Design design;
    synthesize(file, program, flags, true, design);
    Str rtl, trace_text;
    uint64_t cycles = 0, datapath = 0;
    check(mh_design_simulate(design.p, inputs.c_str(), &rtl.p, &cycles, &datapath, trace ? &trace_text.p : nullptr),
          file);
    const bool agree = interp.str() == rtl.str();
    if (json) {
      nlohmann::ordered_json j;
      j["outputs"] = outputs_json(interp.str());
      j["source_cycles"] = source_cycles;
      j["rtl"] = {{"outputs", outputs_json(rtl.str())}, {"cycles", cycles}, {"datapath_cycles", datapath}};
      j["agree"] = agree;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << interp.str() << ", source-cycles=" << source_cycles << "\n";
      std::cout << "rtl: " << rtl.str() << ", cycles=" << cycles << ", datapath-cycles=" << datapath << "\n";
      if (trace) std::cout << trace_text.str();
    }
    if (!agree) {
      std::cerr << "error: " << file << ": interpreter and RTL simulation disagree\n";
      return kVerify;
    }
    return kOk;
  }
};

struct CosimCmd {
  std::string file;
  SynthFlags flags;
  uint64_t trials = 100, seed = 1;
  bool json = false;

  int run() {
    Program program;
    load_program(file, program);
    Design design;
    synthesize(file, program, flags, true, design);
    Str report;
    int passed = 0;
    check(mh_design_cosim(design.p, trials, seed, json ? 1 : 0, &report.p, &passed), file);
    std::cout << report.str();
    return passed ? kOk : kVerify;
  }
};

// check --------------------------------------------------------------------------------

struct CheckCmd {
  std::string file;
  bool json = false;

  int run() {
    Program program;
    load_program(file, program);
    Str name;
    check(mh_program_name(program.p, &name.p), file);
    size_t ops = mh_program_operation_count(program.p), outs = mh_program_output_count(program.p);
    if (json) {
      nlohmann::ordered_json j;
      j["module"] = name.str();
      j["operations"] = ops;
      j["outputs"] = outs;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "ok: module " << name.str() << ", " << ops << " operations, " << outs << " outputs\n";
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minihls: behavioral-to-RTL and two-level logic synthesis"};
  app.set_version_flag("--version", std::string(mh_version()));
  app.require_subcommand(1);

  SynthCmd synth;
  auto* s = app.add_subcommand("synth", "Schedule, bind and emit a BDL program");
  s->add_option("file", synth.file, "BDL source")->required();
  add_synth_flags(s, synth.flags);
  s->add_option("--emit", synth.emit, "Output format")->check(CLI::IsMember({"verilog", "vhdl", "json"}));
  s->add_option("--out", synth.out, "Output path (report goes beside it as .report.json)");
  s->add_option("--level", synth.level, "rtl, or gate for one-bit programs")->check(CLI::IsMember({"rtl", "gate"}));
  s->add_flag("--json", synth.json, "Machine-readable report on stdout");

  ScheduleCmd schedule;
  auto* sc = app.add_subcommand("schedule", "Print the schedule and binding without emitting");
  sc->add_option("file", schedule.file, "BDL source")->required();
  add_synth_flags(sc, schedule.flags);
  sc->add_flag("--json", schedule.json, "JSON report");
  sc->add_flag("--dot", schedule.dot, "Print the dataflow graph in Graphviz format instead");

  MinimizeCmd minimize;
  auto* m = app.add_subcommand("minimize", "Minimize a PLA truth table and map it to gates");
  m->add_option("file", minimize.file, "PLA file")->required();
  m->add_option("--emit", minimize.emit, "Output format")->check(CLI::IsMember({"verilog", "vhdl", "pla"}));
  m->add_option("--map", minimize.map, "Target library")->check(CLI::IsMember({"aoi", "nand2"}));
  m->add_option("--out", minimize.out, "Output path (stdout when omitted)");
  m->add_option("--name", minimize.name, "Module/entity name (default: file stem)");
  m->add_flag("--json", minimize.json, "JSON summary");

  SimCmd simc;
  auto* si = app.add_subcommand("sim", "Interpret a program and simulate its RTL");
  si->add_option("file", simc.file, "BDL source")->required();
  si->add_option("--inputs", simc.inputs, "Input values, e.g. a=3,b=2")->required();
  add_synth_flags(si, simc.flags);
  si->add_flag("--trace", simc.trace, "Print the per-cycle RTL trace");
  si->add_flag("--json", simc.json, "JSON output");

  CosimCmd cosim;
  auto* co = app.add_subcommand("cosim", "Compare interpreter and RTL simulation on random vectors");
  co->add_option("file", cosim.file, "BDL source")->required();
  add_synth_flags(co, cosim.flags);
  co->add_option("--trials", cosim.trials, "Random vectors besides the two corner vectors");
  co->add_option("--seed", cosim.seed, "Generator seed");
  co->add_flag("--json", cosim.json, "JSON report");

  CheckCmd checkc;
  auto* ch = app.add_subcommand("check", "Parse and check a BDL program");
  ch->add_option("file", checkc.file, "BDL source")->required();
  ch->add_flag("--json", checkc.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (s->parsed()) return synth.run();
    if (sc->parsed()) return schedule.run();
    if (m->parsed()) return minimize.run();
    if (si->parsed()) return simc.run();
    if (co->parsed()) return cosim.run();
    if (ch->parsed()) return checkc.run();
  } catch (const Abort& a) {
    return a.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
