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

#include "errors.hpp"
#include "frontend.hpp"

namespace minihls::frontend {

namespace {

bool fits(uint64_t value, unsigned width) { return width >= 64 || value < (uint64_t{1} << width); }

void annotate(const Expr& e, unsigned width, int line, WidthReport& report) {
  if (e.op == ExprOp::Const && !fits(e.value, width))
    throw WidthError(line, e.value, width,
                     std::to_string(line) + ": constant " + std::to_string(e.value) + " does not fit destination width " +
                         std::to_string(width));
  report.emplace(&e, width);
  for (const auto& o : e.operands) annotate(o, width, line, report);
}

void walk(const Program& p, const Stmt& s, WidthReport& report) {
  if (s.kind == StmtKind::Assign) {
    annotate(s.expr, *p.width_of(s.target), s.line, report);
    return;
  }
  for (const auto& c : s.children) walk(p, c, report);
}

}  // namespace

WidthReport check_widths(const Program& program) {
  WidthReport report;
  walk(program, program.body, report);
  return report;
}

}  // namespace minihls::frontend
