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

#include "frontend.hpp"

namespace minihls::frontend {

const char* expr_op_symbol(ExprOp op) {
  switch (op) {
    case ExprOp::Const: return "const";
    case ExprOp::Var: return "var";
    case ExprOp::Not: return "~";
    case ExprOp::Add: return "+";
    case ExprOp::Sub: return "-";
    case ExprOp::Mul: return "*";
    case ExprOp::And: return "&";
    case ExprOp::Or: return "|";
    case ExprOp::Xor: return "^";
    case ExprOp::Shl: return "<<";
    case ExprOp::Shr: return ">>";
  }
  return "?";
}

bool is_binary(ExprOp op) {
  return op != ExprOp::Const && op != ExprOp::Var && op != ExprOp::Not;
}

Expr Expr::constant(uint64_t value) {
  Expr e;
  e.op = ExprOp::Const;
  e.value = value;
  return e;
}

Expr Expr::var(std::string name) {
  Expr e;
  e.op = ExprOp::Var;
  e.name = std::move(name);
  return e;
}

Expr Expr::unary(ExprOp op, Expr operand) {
  Expr e;
  e.op = op;
  e.operands.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(ExprOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

size_t Expr::operator_count() const {
  size_t n = (op == ExprOp::Const || op == ExprOp::Var) ? 0 : 1;
  for (const auto& o : operands) n += o.operator_count();
  return n;
}

Stmt Stmt::assign(std::string target, Expr expr, int line) {
  Stmt s;
  s.kind = StmtKind::Assign;
  s.target = std::move(target);
  s.expr = std::move(expr);
  s.line = line;
  return s;
}

Stmt Stmt::seq(std::vector<Stmt> children, int line) {
  Stmt s;
  s.kind = StmtKind::Seq;
  s.children = std::move(children);
  s.line = line;
  return s;
}

Stmt Stmt::par(std::vector<Stmt> children, int line) {
  Stmt s;
  s.kind = StmtKind::Par;
  s.children = std::move(children);
  s.line = line;
  return s;
}

bool operator==(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.target == b.target && a.expr == b.expr && a.children == b.children;
}

std::optional<unsigned> Program::width_of(std::string_view n) const {
  for (const auto& p : ports)
    if (p.name == n) return p.width;
  for (const auto& v : locals)
    if (v.name == n) return v.width;
  return std::nullopt;
}

const PortDecl* Program::find_port(std::string_view n) const {
  for (const auto& p : ports)
    if (p.name == n) return &p;
  return nullptr;
}

std::vector<const PortDecl*> Program::inputs() const {
  std::vector<const PortDecl*> out;
  for (const auto& p : ports)
    if (p.dir == PortDir::In) out.push_back(&p);
  return out;
}

std::vector<const PortDecl*> Program::outputs() const {
  std::vector<const PortDecl*> out;
  for (const auto& p : ports)
    if (p.dir == PortDir::Out) out.push_back(&p);
  return out;
}

uint64_t source_cycles(const Stmt& stmt) {
  switch (stmt.kind) {
    case StmtKind::Assign: return 1;
    case StmtKind::Seq: {
      uint64_t total = 0;
      for (const auto& c : stmt.children) total += source_cycles(c);
      return total;
    }
    case StmtKind::Par: {
      uint64_t longest = 0;
      for (const auto& c : stmt.children) longest = std::max(longest, source_cycles(c));
      return longest;
    }
  }
  return 0;
}

// Pretty printing -----------------------------------------------------------

namespace {

// Binding strength; higher binds tighter.
int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Or: return 1;
    case ExprOp::Xor: return 2;
    case ExprOp::And: return 3;
    case ExprOp::Shl:
    case ExprOp::Shr: return 4;
    case ExprOp::Add:
    case ExprOp::Sub: return 5;
    case ExprOp::Mul: return 6;
    case ExprOp::Not: return 7;
    case ExprOp::Const:
    case ExprOp::Var: return 8;
  }
  return 0;
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.op) {
    case ExprOp::Const: os << e.value; return;
    case ExprOp::Var: os << e.name; return;
    case ExprOp::Not: {
      const Expr& x = e.operands[0];
      os << '~';
      bool paren = precedence(x.op) < precedence(ExprOp::Not);
      if (paren) os << '(';
      print_expr(os, x);
      if (paren) os << ')';
      return;
    }
    default: break;
  }
  int p = precedence(e.op);
  const Expr& lhs = e.operands[0];
  const Expr& rhs = e.operands[1];
  bool lparen = precedence(lhs.op) < p;
  bool rparen = precedence(rhs.op) <= p;  // left-associative operators
  if (lparen) os << '(';
  print_expr(os, lhs);
  if (lparen) os << ')';
  os << ' ' << expr_op_symbol(e.op) << ' ';
  if (rparen) os << '(';
  print_expr(os, rhs);
  if (rparen) os << ')';
}

void print_stmt(std::ostream& os, const Stmt& s, int depth) {
  std::string indent(static_cast<size_t>(depth) * 2, ' ');
  if (s.kind == StmtKind::Assign) {
    os << indent << s.target << " = ";
    print_expr(os, s.expr);
    os << ";\n";
    return;
  }
  os << indent << (s.kind == StmtKind::Seq ? "seq" : "par") << " {\n";
  for (const auto& c : s.children) print_stmt(os, c, depth + 1);
  os << indent << "}\n";
}

}  // namespace

std::string pretty_print(const Expr& expr) {
  std::ostringstream os;
  print_expr(os, expr);
  return os.str();
}

std::string pretty_print(const Program& program) {
  std::ostringstream os;
  os << "module " << program.name << "(";
  for (size_t i = 0; i < program.ports.size(); ++i) {
    const auto& p = program.ports[i];
    if (i) os << ", ";
    os << (p.dir == PortDir::In ? "in " : "out ") << p.name << ": " << p.width;
  }
  os << ") {\n";
  for (const auto& v : program.locals) os << "  var " << v.name << ": " << v.width << ";\n";
  print_stmt(os, program.body, 1);
  os << "}\n";
  return os.str();
}

}  // namespace minihls::frontend
