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

#include <cctype>
#include <optional>
#include <set>
#include <sstream>

#include "emit.hpp"
#include "errors.hpp"

namespace minihls::emit {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

unsigned parse_count(const std::vector<std::string>& w, int line) {
  if (w.size() != 2) throw PlaFormatError(line, "'" + w[0] + "' takes exactly one number");
  size_t used = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(w[1], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != w[1].size()) throw PlaFormatError(line, "'" + w[1] + "' is not a number");
  return static_cast<unsigned>(v);
}

}  // namespace

logic::TruthTable read_pla(std::string_view text) {
  std::optional<unsigned> ni, no;
  std::vector<std::string> ilb, ob;
  struct Row {
    std::string in, out;
    int line;
  };
  std::vector<Row> rows;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool ended = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto c = raw.find('#'); c != std::string::npos) raw.erase(c);
    auto w = words(raw);
    if (w.empty()) continue;
    if (ended) throw PlaFormatError(line, "content after .e");
    if (w[0][0] == '.') {
      const std::string& d = w[0];
      if (d == ".i") {
        ni = parse_count(w, line);
        if (*ni > logic::kMaxTableInputs)
          throw SizeError(std::to_string(*ni) + " inputs exceed the limit of " + std::to_string(logic::kMaxTableInputs));
      } else if (d == ".o") {
        no = parse_count(w, line);
        if (*no == 0) throw PlaFormatError(line, "a table needs at least one output");
      } else if (d == ".ilb") {
        ilb.assign(w.begin() + 1, w.end());
      } else if (d == ".ob") {
        ob.assign(w.begin() + 1, w.end());
      } else if (d == ".p") {
        parse_count(w, line);
      } else if (d == ".type") {
        if (w.size() != 2 || (w[1] != "f" && w[1] != "fd")) throw PlaFormatError(line, "only .type f and fd are supported");
      } else if (d == ".e" || d == ".end") {
        ended = true;
      } else {
        throw PlaFormatError(line, "unknown directive '" + d + "'");
      }
      continue;
    }
    if (!ni || !no) throw PlaFormatError(line, "row before .i and .o");
    std::string joined;
    for (const auto& part : w) joined += part;
    if (joined.size() != *ni + *no)
      throw PlaFormatError(line, "row has " + std::to_string(joined.size()) + " characters, expected " +
                                     std::to_string(*ni + *no));
    rows.push_back({joined.substr(0, *ni), joined.substr(*ni), line});
  }
  if (!no) throw PlaFormatError(line, "missing .o");
  if (!ni) throw PlaFormatError(line, "missing .i");
  if (!ilb.empty() && ilb.size() != *ni) throw PlaFormatError(line, ".ilb names do not match .i");
  if (!ob.empty() && ob.size() != *no) throw PlaFormatError(line, ".ob names do not match .o");

  logic::TruthTable t;
  for (unsigned i = 0; i < *ni; ++i) t.inputs.push_back(ilb.empty() ? "x" + std::to_string(i) : ilb[i]);
  for (unsigned o = 0; o < *no; ++o) t.outputs.push_back(ob.empty() ? "f" + std::to_string(o) : ob[o]);
  std::vector<std::set<uint32_t>> on(*no);
  for (const auto& r : rows) {
    std::vector<uint32_t> expanded{0};
    for (char c : r.in) {
      std::vector<uint32_t> next;
      for (uint32_t v : expanded) {
        if (c == '0' || c == '-') next.push_back(v << 1);
        if (c == '1' || c == '-') next.push_back((v << 1) | 1);
        if (c != '0' && c != '1' && c != '-')
          throw PlaFormatError(r.line, std::string("bad input character '") + c + "'");
      }
      expanded = std::move(next);
    }
    for (unsigned o = 0; o < *no; ++o) {
      char c = r.out[o];
      if (c == '1' || c == '4') {
        on[o].insert(expanded.begin(), expanded.end());
      } else if (c != '0' && c != '-' && c != '~' && c != '2' && c != '3') {
        throw PlaFormatError(r.line, std::string("bad output character '") + c + "'");
      }
    }
  }
  for (auto& s : on) t.minterms.emplace_back(s.begin(), s.end());
  logic::normalize(t);
  return t;
}

std::string write_pla(const logic::TruthTable& table) {
  if (table.inputs.size() > logic::kMaxTableInputs)
    throw SizeError(std::to_string(table.inputs.size()) + " inputs exceed the limit of " +
                    std::to_string(logic::kMaxTableInputs));
  const size_t n = table.inputs.size();
  std::ostringstream os;
  os << ".i " << n << "\n.o " << table.outputs.size() << "\n";
  if (n) {
    os << ".ilb";
    for (const auto& s : table.inputs) os << " " << s;
    os << "\n";
  }
  os << ".ob";
  for (const auto& s : table.outputs) os << " " << s;
  os << "\n.p " << table.rows() << "\n";
  for (uint32_t row = 0; row < table.rows(); ++row) {
    for (size_t i = 0; i < n; ++i) os << (((row >> (n - 1 - i)) & 1) ? '1' : '0');
    if (n) os << ' ';
    for (size_t o = 0; o < table.outputs.size(); ++o) os << (table.value(o, row) ? '1' : '0');
    os << "\n";
  }
  os << ".e\n";
  return os.str();
}

}  // namespace minihls::emit
