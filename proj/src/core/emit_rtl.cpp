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

#include <sstream>

#include "emit.hpp"
#include "json.hpp"

namespace minihls::emit {

using rtl::Drive;
using rtl::Source;
using rtl::SourceKind;

namespace {

uint64_t mask(unsigned bits) { return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1; }

const char* source_kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::Input: return "input";
    case SourceKind::Const: return "const";
    case SourceKind::Register: return "register";
    case SourceKind::Unit: return "unit";
  }
  return "?";
}

nlohmann::ordered_json source_json(const rtl::RtlDesign& d, const Source& s) {
  nlohmann::ordered_json j;
  j["kind"] = source_kind_name(s.kind);
  switch (s.kind) {
    case SourceKind::Input: j["port"] = d.datapath.inputs.at(s.index).name; break;
    case SourceKind::Const: j["value"] = s.value; break;
    case SourceKind::Register: j["register"] = "r" + std::to_string(s.index); break;
    case SourceKind::Unit: j["unit"] = std::string(dfg::kind_name(s.unit.kind)) + std::to_string(s.unit.instance); break;
  }
  j["bits"] = s.bits;
  return j;
}

nlohmann::ordered_json drive_json(const rtl::RtlDesign& d, const Drive& drive) {
  nlohmann::ordered_json j;
  auto sources = nlohmann::ordered_json::array();
  for (const auto& s : drive.sources) sources.push_back(source_json(d, s));
  j["sources"] = sources;
  if (drive.mux) j["mux"] = d.datapath.muxes.at(*drive.mux).name;
  return j;
}

}  // namespace

std::string design_to_json(const rtl::RtlDesign& d) {
  using nlohmann::ordered_json;
  const auto& dp = d.datapath;
  ordered_json doc;
  doc["format"] = "minihls-design/" + std::to_string(kDesignFormat);
  doc["name"] = d.name;
  doc["length"] = d.length;
  auto ports = [](const std::vector<rtl::Port>& ps) {
    ordered_json a = ordered_json::array();
    for (const auto& p : ps) a.push_back({{"name", p.name}, {"width", p.width}});
    return a;
  };
  doc["inputs"] = ports(dp.inputs);
  ordered_json outs = ordered_json::array();
  for (const auto& p : dp.outputs)
    outs.push_back({{"name", p.name}, {"width", p.width}, {"source", source_json(d, p.source)}});
  doc["outputs"] = outs;
  ordered_json units = ordered_json::array();
  for (const auto& u : dp.units) {
    ordered_json j;
    j["name"] = u.name;
    j["kind"] = dfg::kind_name(u.kind);
    j["width"] = u.width;
    j["latency"] = u.latency;
    ordered_json ops = ordered_json::array();
    for (const auto& o : u.operands) ops.push_back(drive_json(d, o));
    j["operands"] = ops;
    units.push_back(j);
  }
  doc["units"] = units;
  ordered_json regs = ordered_json::array();
  for (const auto& r : dp.registers)
    regs.push_back({{"name", r.name}, {"width", r.width}, {"input", drive_json(d, r.input)}});
  doc["registers"] = regs;
  ordered_json muxes = ordered_json::array();
  for (const auto& m : dp.muxes)
    muxes.push_back(
        {{"name", m.name}, {"width", m.width}, {"inputs", m.input_count}, {"select_width", m.select_width}});
  doc["muxes"] = muxes;
  ordered_json words = ordered_json::array();
  for (size_t s = 0; s < d.controller.words.size(); ++s) {
    const auto& w = d.controller.words[s];
    ordered_json j;
    j["state"] = s;
    j["mux_select"] = w.mux_select;
    j["reg_enable"] = w.reg_enable;
    j["unit_capture"] = w.unit_capture;
    j["unit_op"] = w.unit_op;
    j["finish"] = w.finish;
    words.push_back(j);
  }
  doc["controller"] = {
      {"states", d.controller.state_count}, {"state_bits", d.controller.state_bits}, {"words", words}};
  return doc.dump(2) + "\n";
}

namespace {

class RtlWriter {
 public:
  RtlWriter(const rtl::RtlDesign& d, const std::string& module_name) : d_(d), dp_(d.datapath), names_(Hdl::Verilog) {
    clk_ = names_.claim("clk");
    reset_ = names_.claim("reset");
    start_ = names_.claim("start");
    done_ = names_.claim("done");
    for (const auto& p : dp_.inputs) in_.push_back(names_.claim(p.name));
    for (const auto& p : dp_.outputs) out_.push_back(names_.claim(p.name));
    module_ = NameTable(Hdl::Verilog).claim(module_name);
    state_ = names_.claim("state");
    finish_ = names_.claim("finish");
    state_names_.push_back(names_.claim("S_IDLE"));
    for (unsigned k = 1; k < d_.controller.state_count; ++k) state_names_.push_back(names_.claim("S_STEP" + std::to_string(k)));
    for (const auto& r : dp_.registers) {
      reg_.push_back(names_.claim(r.name));
      reg_en_.push_back(names_.claim(r.name + "_en"));
    }
    for (const auto& m : dp_.muxes) {
      mux_.push_back(names_.claim(m.name));
      mux_sel_.push_back(names_.claim(m.name + "_sel"));
    }
    for (const auto& u : dp_.units) {
      unit_.push_back(names_.claim(u.name + "_y"));
      std::vector<std::string> ops, latched;
      for (size_t p = 0; p < u.operands.size(); ++p) {
        std::string base = u.name + "_" + static_cast<char>('a' + p);
        ops.push_back(names_.claim(base));
        latched.push_back(u.latency > 1 ? names_.claim(base + "_q") : "");
      }
      unit_ops_.push_back(ops);
      unit_q_.push_back(latched);
      unit_cap_.push_back(u.latency > 1 ? names_.claim(u.name + "_cap") : "");
    }
  }

  std::string write() {
    std::ostringstream os;
    const unsigned sb = d_.controller.state_bits;
    os << "// Generated by " << kToolName << " " << kToolVersion << "; input hash " << hash_hex() << "\n";
    os << "module " << module_ << " (" << clk_ << ", " << reset_ << ", " << start_ << ", " << done_;
    for (const auto& n : in_) os << ", " << n;
    for (const auto& n : out_) os << ", " << n;
    os << ");\n";
    os << "  input " << clk_ << ";\n  input " << reset_ << ";\n  input " << start_ << ";\n";
    os << "  output reg " << done_ << ";\n";
    for (size_t i = 0; i < in_.size(); ++i) os << "  input " << range(dp_.inputs[i].width) << in_[i] << ";\n";
    for (size_t i = 0; i < out_.size(); ++i) os << "  output " << range(dp_.outputs[i].width) << out_[i] << ";\n";
    os << "\n";
    for (size_t k = 0; k < state_names_.size(); ++k)
      os << "  localparam " << state_names_[k] << " = " << sb << "'d" << k << ";\n";
    os << "\n  reg " << range(sb) << state_ << ";\n";
    os << "  reg " << finish_ << ";\n";
    for (size_t r = 0; r < reg_.size(); ++r) {
      os << "  reg " << range(dp_.registers[r].width) << reg_[r] << ";\n";
      os << "  reg " << reg_en_[r] << ";\n";
    }
    for (size_t m = 0; m < mux_.size(); ++m) {
      os << "  reg " << range(dp_.muxes[m].select_width) << mux_sel_[m] << ";\n";
      os << "  wire " << range(dp_.muxes[m].width) << mux_[m] << ";\n";
    }
    for (size_t u = 0; u < unit_.size(); ++u) {
      const unsigned w = dp_.units[u].width;
      for (size_t p = 0; p < unit_ops_[u].size(); ++p) {
        os << "  wire " << range(w) << unit_ops_[u][p] << ";\n";
        if (!unit_q_[u][p].empty()) os << "  reg " << range(w) << unit_q_[u][p] << ";\n";
      }
      if (!unit_cap_[u].empty()) os << "  reg " << unit_cap_[u] << ";\n";
      os << "  wire " << range(w) << unit_[u] << ";\n";
    }

    os << "\n  // datapath\n";
    for (size_t m = 0; m < mux_.size(); ++m) {
      const auto& mux = dp_.muxes[m];
      const Drive* drive = find_mux_drive(m);
      os << "  assign " << mux_[m] << " = ";
      for (size_t i = 0; i + 1 < drive->sources.size(); ++i)
        os << "(" << mux_sel_[m] << " == " << mux.select_width << "'d" << i << ") ? "
           << source_expr(drive->sources[i], mux.width) << " : ";
      os << source_expr(drive->sources.back(), mux.width) << ";\n";
    }
    for (size_t u = 0; u < unit_.size(); ++u) {
      const auto& unit = dp_.units[u];
      for (size_t p = 0; p < unit_ops_[u].size(); ++p)
        os << "  assign " << unit_ops_[u][p] << " = " << drive_expr(unit.operands[p], unit.width) << ";\n";
      const auto& ops = unit.latency > 1 ? unit_q_[u] : unit_ops_[u];
      os << "  assign " << unit_[u] << " = " << operation(unit.kind, ops) << ";\n";
    }
    for (size_t o = 0; o < out_.size(); ++o)
      os << "  assign " << out_[o] << " = " << source_expr(dp_.outputs[o].source, dp_.outputs[o].width) << ";\n";

    os << "\n  // control decode\n";
    os << "  always @(*) begin\n";
    os << "    " << finish_ << " = 1'b0;\n";
    for (size_t r = 0; r < reg_.size(); ++r) os << "    " << reg_en_[r] << " = 1'b0;\n";
    for (size_t m = 0; m < mux_.size(); ++m)
      os << "    " << mux_sel_[m] << " = " << dp_.muxes[m].select_width << "'d0;\n";
    for (size_t u = 0; u < unit_.size(); ++u)
      if (!unit_cap_[u].empty()) os << "    " << unit_cap_[u] << " = 1'b0;\n";
    os << "    case (" << state_ << ")\n";
    for (size_t k = 0; k < d_.controller.words.size(); ++k) {
      const auto& w = d_.controller.words[k];
      std::vector<std::string> lines;
      if (w.finish) lines.push_back(finish_ + " = 1'b1;");
      for (size_t r = 0; r < reg_.size(); ++r)
        if (w.reg_enable[r]) lines.push_back(reg_en_[r] + " = 1'b1;");
      for (size_t m = 0; m < mux_.size(); ++m)
        if (w.mux_select[m] > 0)
          lines.push_back(mux_sel_[m] + " = " + std::to_string(dp_.muxes[m].select_width) + "'d" +
                          std::to_string(w.mux_select[m]) + ";");
      for (size_t u = 0; u < unit_.size(); ++u)
        if (!unit_cap_[u].empty() && w.unit_capture[u]) lines.push_back(unit_cap_[u] + " = 1'b1;");
      os << "      " << state_names_[k] << ": begin\n";
      for (const auto& l : lines) os << "        " << l << "\n";
      os << "      end\n";
    }
    os << "      default: begin\n      end\n";
    os << "    endcase\n  end\n";

    os << "\n  // registers and state\n";
    os << "  always @(posedge " << clk_ << ") begin\n";
    os << "    if (" << reset_ << ") begin\n";
    os << "      " << state_ << " <= " << state_names_[0] << ";\n";
    os << "      " << done_ << " <= 1'b0;\n";
    for (size_t r = 0; r < reg_.size(); ++r)
      os << "      " << reg_[r] << " <= " << dp_.registers[r].width << "'d0;\n";
    for (size_t u = 0; u < unit_.size(); ++u)
      for (const auto& q : unit_q_[u])
        if (!q.empty()) os << "      " << q << " <= " << dp_.units[u].width << "'d0;\n";
    os << "    end else begin\n";
    for (size_t r = 0; r < reg_.size(); ++r)
      os << "      if (" << reg_en_[r] << ") " << reg_[r] << " <= "
         << drive_expr(dp_.registers[r].input, dp_.registers[r].width) << ";\n";
    for (size_t u = 0; u < unit_.size(); ++u) {
      if (unit_cap_[u].empty()) continue;
      os << "      if (" << unit_cap_[u] << ") begin\n";
      for (size_t p = 0; p < unit_ops_[u].size(); ++p)
        os << "        " << unit_q_[u][p] << " <= " << unit_ops_[u][p] << ";\n";
      os << "      end\n";
    }
    os << "      case (" << state_ << ")\n";
    const std::string first = state_names_.size() > 1 ? state_names_[1] : state_names_[0];
    os << "        " << state_names_[0] << ": begin\n";
    os << "          if (" << start_ << ") begin\n";
    os << "            " << done_ << " <= " << finish_ << ";\n";
    os << "            " << state_ << " <= " << finish_ << " ? " << state_names_[0] << " : " << first << ";\n";
    os << "          end\n";
    os << "        end\n";
    for (size_t k = 1; k < state_names_.size(); ++k) {
      os << "        " << state_names_[k] << ": begin\n";
      if (d_.controller.words[k].finish) {
        os << "          " << state_ << " <= " << state_names_[0] << ";\n";
        os << "          " << done_ << " <= 1'b1;\n";
      } else {
        os << "          " << state_ << " <= " << state_names_[k + 1] << ";\n";
      }
      os << "        end\n";
    }
    os << "        default: " << state_ << " <= " << state_names_[0] << ";\n";
    os << "      endcase\n";
    os << "    end\n  end\n";
    os << "endmodule\n";
    return os.str();
  }

 private:
  static std::string range(unsigned width) { return "[" + std::to_string(width - 1) + ":0] "; }

  std::string hash_hex() const {
    std::ostringstream os;
    os << "0x" << std::hex;
    os.width(16);
    os.fill('0');
    os << fnv1a(design_to_json(d_));
    return os.str();
  }

  const Drive* find_mux_drive(size_t m) const {
    for (const auto& u : dp_.units)
      for (const auto& o : u.operands)
        if (o.mux == m) return &o;
    for (const auto& r : dp_.registers)
      if (r.input.mux == m) return &r.input;
    throw std::logic_error("mux without a drive");
  }

  // Verilog expression for `s` resized to `width` bits.
  std::string source_expr(const Source& s, unsigned width) const {
    if (s.kind == SourceKind::Const)
      return std::to_string(width) + "'d" + std::to_string(s.value & mask(std::min(width, s.bits)));
    std::string name;
    unsigned have = 1;
    switch (s.kind) {
      case SourceKind::Input:
        name = in_.at(s.index);
        have = dp_.inputs.at(s.index).width;
        break;
      case SourceKind::Register:
        name = reg_.at(s.index - 1);
        have = dp_.registers.at(s.index - 1).width;
        break;
      case SourceKind::Unit:
        for (size_t u = 0; u < dp_.units.size(); ++u)
          if (dp_.units[u].kind == s.unit.kind && dp_.units[u].instance == s.unit.instance) {
            name = unit_[u];
            have = dp_.units[u].width;
          }
        break;
      case SourceKind::Const: break;
    }
    return resize(name, have, std::min(s.bits, have), width);
  }

  std::string drive_expr(const Drive& d, unsigned width) const {
    if (!d.mux) return source_expr(d.sources.at(0), width);
    const auto& m = dp_.muxes.at(*d.mux);
    return resize(mux_.at(*d.mux), m.width, m.width, width);
  }

  // `name` is `have` bits wide; its low `bits` bits are significant.
  static std::string resize(const std::string& name, unsigned have, unsigned bits, unsigned width) {
    unsigned keep = std::min(bits, width);
    std::string base = keep == have ? name : name + "[" + std::to_string(keep - 1) + ":0]";
    if (keep == width) return base;
    return "{" + std::to_string(width - keep) + "'d0, " + base + "}";
  }

  static std::string operation(dfg::NodeKind kind, const std::vector<std::string>& ops) {
    using dfg::NodeKind;
    auto bin = [&](const char* op) { return ops.at(0) + " " + op + " " + ops.at(1); };
    switch (kind) {
      case NodeKind::Add: return bin("+");
      case NodeKind::Sub: return bin("-");
      case NodeKind::Mul: return bin("*");
      case NodeKind::And: return bin("&");
      case NodeKind::Or: return bin("|");
      case NodeKind::Xor: return bin("^");
      case NodeKind::Shl: return bin("<<");
      case NodeKind::Shr: return bin(">>");
      case NodeKind::Not: return "~" + ops.at(0);
      default: throw std::logic_error("not a functional-unit kind");
    }
  }

  const rtl::RtlDesign& d_;
  const rtl::Datapath& dp_;
  NameTable names_;
  std::string clk_, reset_, start_, done_, module_, state_, finish_;
  std::vector<std::string> in_, out_, state_names_, reg_, reg_en_, mux_, mux_sel_, unit_, unit_cap_;
  std::vector<std::vector<std::string>> unit_ops_, unit_q_;
};

}  // namespace

std::string emit_verilog_rtl(const rtl::RtlDesign& design, const std::string& module_name) {
  return RtlWriter(design, module_name).write();
}

}  // namespace minihls::emit
