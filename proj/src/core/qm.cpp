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

#include <algorithm>
#include <set>
#include <unordered_set>

#include "errors.hpp"
#include "logic.hpp"

namespace minihls::logic {

size_t TruthTable::output_index(std::string_view name) const {
  for (size_t i = 0; i < outputs.size(); ++i)
    if (outputs[i] == name) return i;
  throw InputError("truth table has no output '" + std::string(name) + "'");
}

bool TruthTable::value(size_t output, uint32_t row) const {
  const auto& m = minterms.at(output);
  return std::binary_search(m.begin(), m.end(), row);
}

void normalize(TruthTable& t) {
  if (t.inputs.size() > kMaxTableInputs)
    throw SizeError("truth table has " + std::to_string(t.inputs.size()) + " inputs; at most " +
                    std::to_string(kMaxTableInputs) + " are supported");
  std::set<std::string> names;
  for (const auto& n : t.inputs)
    if (n.empty() || !names.insert(n).second) throw InputError("duplicate or empty signal name '" + n + "'");
  for (const auto& n : t.outputs)
    if (n.empty() || !names.insert(n).second) throw InputError("duplicate or empty signal name '" + n + "'");
  t.minterms.resize(t.outputs.size());
  for (auto& m : t.minterms) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (!m.empty() && m.back() >= t.rows()) throw InputError("minterm " + std::to_string(m.back()) + " out of range");
  }
}

std::string to_string(const Implicant& imp, const std::vector<std::string>& inputs) {
  if (imp.care == 0) return "1";
  bool spaced = std::any_of(inputs.begin(), inputs.end(), [](const std::string& s) { return s.size() != 1; });
  const auto n = static_cast<unsigned>(inputs.size());
  std::string out;
  for (unsigned i = 0; i < n; ++i) {
    uint32_t bit = uint32_t{1} << (n - 1 - i);
    if (!(imp.care & bit)) continue;
    if (spaced && !out.empty()) out += ' ';
    out += inputs[i];
    if (!(imp.values & bit)) out += '\'';
  }
  return out;
}

std::string to_string(const SopCover& cover, const std::vector<std::string>& inputs) {
  if (cover.empty()) return "0";
  std::string out;
  for (const auto& imp : cover) {
    if (!out.empty()) out += " + ";
    out += to_string(imp, inputs);
  }
  return out;
}

unsigned literal_count(const SopCover& cover) {
  unsigned n = 0;
  for (const auto& imp : cover) n += imp.literals();
  return n;
}

bool cover_value(const SopCover& cover, uint32_t row) {
  return std::any_of(cover.begin(), cover.end(), [row](const Implicant& i) { return i.covers(row); });
}

SopCover canonical_sop(const TruthTable& table, std::string_view output) {
  const auto& m = table.minterms.at(table.output_index(output));
  uint32_t full = table.rows() - 1;
  SopCover cover;
  cover.reserve(m.size());
  for (uint32_t row : m) cover.push_back({full, row});
  return cover;
}

std::vector<Implicant> qm_primes(const TruthTable& table, std::string_view output) {
  if (table.inputs.size() > kMaxTableInputs)
    throw SizeError("minimization supports at most " + std::to_string(kMaxTableInputs) + " inputs");
  const auto n = static_cast<unsigned>(table.inputs.size());
  auto key = [](const Implicant& i) { return (uint64_t{i.care} << 32) | i.values; };

  std::vector<Implicant> current = canonical_sop(table, output);
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::unordered_set<uint64_t> present;
    for (const auto& i : current) present.insert(key(i));
    std::unordered_set<uint64_t> merged_away;
    std::set<Implicant> next;
    // Each implicant is paired with its neighbour that has one more cared
    // bit set; both then lose that literal.
    for (const auto& i : current) {
      for (unsigned b = 0; b < n; ++b) {
        uint32_t bit = uint32_t{1} << b;
        if (!(i.care & bit) || (i.values & bit)) continue;
        Implicant partner{i.care, i.values | bit};
        if (!present.count(key(partner))) continue;
        merged_away.insert(key(i));
        merged_away.insert(key(partner));
        next.insert({i.care & ~bit, i.values});
      }
    }
    for (const auto& i : current)
      if (!merged_away.count(key(i))) primes.push_back(i);
    current.assign(next.begin(), next.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

SopCover select_cover(const std::vector<Implicant>& primes, const TruthTable& table, std::string_view output) {
  const auto& on = table.minterms.at(table.output_index(output));
  std::set<uint32_t> uncovered(on.begin(), on.end());

  std::set<Implicant> essential;
  for (uint32_t m : on) {
    const Implicant* only = nullptr;
    int hits = 0;
    for (const auto& p : primes) {
      if (p.covers(m)) {
        ++hits;
        only = &p;
      }
    }
    if (hits == 0) throw InputError("prime implicants do not cover minterm " + std::to_string(m));
    if (hits == 1) essential.insert(*only);
  }

  SopCover cover(essential.begin(), essential.end());
  std::sort(cover.begin(), cover.end(), [](const Implicant& a, const Implicant& b) {
    return a.care != b.care ? a.care > b.care : a.values < b.values;
  });
  for (const auto& p : cover) std::erase_if(uncovered, [&](uint32_t m) { return p.covers(m); });

  while (!uncovered.empty()) {
    const Implicant* best = nullptr;
    size_t best_gain = 0;
    for (const auto& p : primes) {
      if (std::find(cover.begin(), cover.end(), p) != cover.end()) continue;
      size_t gain = static_cast<size_t>(std::count_if(uncovered.begin(), uncovered.end(), [&](uint32_t m) { return p.covers(m); }));
      if (gain == 0) continue;
      bool better = !best || gain > best_gain || (gain == best_gain && p.literals() < best->literals()) ||
                    (gain == best_gain && p.literals() == best->literals() && p < *best);
      if (better) {
        best = &p;
        best_gain = gain;
      }
    }
    cover.push_back(*best);
    std::erase_if(uncovered, [&](uint32_t m) { return best->covers(m); });
  }
  return cover;
}

SopCover minimize(const TruthTable& table, std::string_view output) {
  return select_cover(qm_primes(table, output), table, output);
}

}  // namespace minihls::logic
