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

#include <map>
#include <set>

#include "errors.hpp"
#include "frontend.hpp"

namespace minihls::frontend {

namespace {

class Parser {
 public:
  explicit Parser(std::span<const Token> toks) : toks_(toks) {}

  Program run() {
    Program p;
    expect_keyword("module");
    p.name = expect_ident();
    expect_punct("(");
    if (!at_punct(")")) {
      do {
        p.ports.push_back(parse_port());
      } while (accept_punct(","));
    }
    expect_punct(")");
    expect_punct("{");
    while (at_keyword("var") || at_keyword("int")) p.locals.push_back(parse_vardecl());
    int body_line = line();
    std::vector<Stmt> stmts;
    while (!at_punct("}")) stmts.push_back(parse_stmt());
    expect_punct("}");
    if (!at_end()) fail("end of input");
    if (stmts.size() == 1) p.body = std::move(stmts.front());
    else p.body = Stmt::seq(std::move(stmts), body_line);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= toks_.size(); }
  const Token* cur() const { return at_end() ? nullptr : &toks_[pos_]; }
  int line() const { return at_end() ? (toks_.empty() ? 1 : toks_.back().line) : toks_[pos_].line; }

  bool at(TokenKind k, std::string_view text) const {
    return !at_end() && toks_[pos_].kind == k && toks_[pos_].text == text;
  }
  bool at_punct(std::string_view t) const { return at(TokenKind::Punctuation, t); }
  bool at_keyword(std::string_view t) const { return at(TokenKind::Keyword, t); }
  bool at_op(std::string_view t) const { return at(TokenKind::Operator, t); }

  bool accept_punct(std::string_view t) {
    if (!at_punct(t)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    int l = 1, c = 1;
    std::string found = "end of input";
    if (const Token* t = cur()) {
      l = t->line;
      c = t->column;
      found = "'" + t->text + "'";
    } else if (!toks_.empty()) {
      l = toks_.back().line;
      c = toks_.back().column + static_cast<int>(toks_.back().text.size());
    }
    throw ParseError(l, c, expected,
                     std::to_string(l) + ":" + std::to_string(c) + ": expected " + expected + ", found " + found);
  }

  void expect_punct(std::string_view t) {
    if (!accept_punct(t)) fail("'" + std::string(t) + "'");
  }

  void expect_keyword(std::string_view t) {
    if (!at_keyword(t)) fail("'" + std::string(t) + "'");
    ++pos_;
  }

  std::string expect_ident() {
    if (at_end() || toks_[pos_].kind != TokenKind::Identifier) fail("identifier");
    return toks_[pos_++].text;
  }

  unsigned expect_width() {
    if (at_end() || toks_[pos_].kind != TokenKind::IntegerLiteral) fail("width");
    const Token& t = toks_[pos_++];
    if (t.value < 1 || t.value > kMaxWidth)
      throw SemanticError(t.line, std::to_string(t.line) + ": width " + t.text + " outside [1, 64]");
    return static_cast<unsigned>(t.value);
  }

  PortDecl parse_port() {
    PortDecl d;
    if (at_keyword("in")) d.dir = PortDir::In;
    else if (at_keyword("out")) d.dir = PortDir::Out;
    else fail("'in' or 'out'");
    ++pos_;
    d.name = expect_ident();
    expect_punct(":");
    d.width = expect_width();
    return d;
  }

  VarDecl parse_vardecl() {
    VarDecl v;
    if (at_keyword("var")) {
      ++pos_;
      v.name = expect_ident();
      expect_punct(":");
      v.width = expect_width();
    } else {
      // int <width> <name>;
      expect_keyword("int");
      v.width = expect_width();
      v.name = expect_ident();
    }
    expect_punct(";");
    return v;
  }

  Stmt parse_stmt() {
    int l = line();
    if (at_keyword("seq") || at_keyword("par")) {
      bool is_par = at_keyword("par");
      ++pos_;
      expect_punct("{");
      std::vector<Stmt> children;
      while (!at_punct("}")) {
        if (at_end()) fail("'}'");
        children.push_back(parse_stmt());
      }
      expect_punct("}");
      return is_par ? Stmt::par(std::move(children), l) : Stmt::seq(std::move(children), l);
    }
    if (at_end() || toks_[pos_].kind != TokenKind::Identifier) fail("statement");
    std::string target = expect_ident();
    if (!at_op("=")) fail("'='");
    ++pos_;
    Expr e = parse_binary(1);
    expect_punct(";");
    return Stmt::assign(std::move(target), std::move(e), l);
  }

  static int binary_prec(const Token& t, ExprOp& op) {
    if (t.kind != TokenKind::Operator) return 0;
    const std::string& s = t.text;
    if (s == "|") { op = ExprOp::Or; return 1; }
    if (s == "^") { op = ExprOp::Xor; return 2; }
    if (s == "&") { op = ExprOp::And; return 3; }
    if (s == "<<") { op = ExprOp::Shl; return 4; }
    if (s == ">>") { op = ExprOp::Shr; return 4; }
    if (s == "+") { op = ExprOp::Add; return 5; }
    if (s == "-") { op = ExprOp::Sub; return 5; }
    if (s == "*") { op = ExprOp::Mul; return 6; }
    return 0;
  }

  // Precedence climbing; all binary operators are left-associative.
  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    while (!at_end()) {
      ExprOp op{};
      int p = binary_prec(toks_[pos_], op);
      if (p == 0 || p < min_prec) break;
      const Token& op_tok = toks_[pos_++];
      Expr rhs = parse_binary(p + 1);
      if ((op == ExprOp::Shl || op == ExprOp::Shr) && rhs.op != ExprOp::Const)
        throw SemanticError(op_tok.line, std::to_string(op_tok.line) + ": shift amount must be a constant literal");
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_unary() {
    if (at_op("~")) {
      ++pos_;
      return Expr::unary(ExprOp::Not, parse_unary());
    }
    if (accept_punct("(")) {
      Expr e = parse_binary(1);
      expect_punct(")");
      return e;
    }
    if (!at_end() && toks_[pos_].kind == TokenKind::IntegerLiteral) return Expr::constant(toks_[pos_++].value);
    if (!at_end() && toks_[pos_].kind == TokenKind::Identifier) return Expr::var(toks_[pos_++].text);
    fail("expression");
  }

  std::span<const Token> toks_;
  size_t pos_ = 0;
};

// Semantic checks --------------------------------------------------------------

[[noreturn]] void semantic_fail(int line, const std::string& msg) {
  throw SemanticError(line, (line > 0 ? std::to_string(line) + ": " : std::string()) + msg);
}

void collect_reads(const Expr& e, std::vector<std::string>& out) {
  if (e.op == ExprOp::Var) out.push_back(e.name);
  for (const auto& o : e.operands) collect_reads(o, out);
}

void collect_writes(const Stmt& s, std::set<std::string>& out) {
  if (s.kind == StmtKind::Assign) out.insert(s.target);
  for (const auto& c : s.children) collect_writes(c, out);
}

class SemanticChecker {
 public:
  explicit SemanticChecker(const Program& p) : prog_(p) {}

  void run() {
    std::set<std::string> names;
    for (const auto& port : prog_.ports) {
      if (!names.insert(port.name).second) semantic_fail(0, "duplicate declaration of '" + port.name + "'");
      if (port.width < 1 || port.width > kMaxWidth) semantic_fail(0, "width of '" + port.name + "' outside [1, 64]");
    }
    for (const auto& v : prog_.locals) {
      if (!names.insert(v.name).second) semantic_fail(0, "duplicate declaration of '" + v.name + "'");
      if (v.width < 1 || v.width > kMaxWidth) semantic_fail(0, "width of '" + v.name + "' outside [1, 64]");
    }
    for (const auto& port : prog_.ports)
      if (port.dir == PortDir::In) first_write_[port.name] = 0;

    structure(prog_.body);
    record_writes(prog_.body, 1);
    check_reads(prog_.body, 1);

    for (const auto& port : prog_.ports)
      if (port.dir == PortDir::Out && !first_write_.count(port.name))
        semantic_fail(0, "output '" + port.name + "' is never assigned");
  }

 private:
  // Declarations, targets, shift operands and par write-write conflicts.
  void structure(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Assign: {
        if (!prog_.width_of(s.target)) semantic_fail(s.line, "assignment to undeclared '" + s.target + "'");
        if (const auto* port = prog_.find_port(s.target); port && port->dir == PortDir::In)
          semantic_fail(s.line, "assignment to input port '" + s.target + "'");
        std::vector<std::string> reads;
        collect_reads(s.expr, reads);
        for (const auto& r : reads)
          if (!prog_.width_of(r)) semantic_fail(s.line, "use of undeclared '" + r + "'");
        check_shifts(s.expr, s.line);
        return;
      }
      case StmtKind::Seq:
        for (const auto& c : s.children) structure(c);
        return;
      case StmtKind::Par: {
        std::map<std::string, size_t> writer;
        for (size_t i = 0; i < s.children.size(); ++i) {
          structure(s.children[i]);
          std::set<std::string> w;
          collect_writes(s.children[i], w);
          for (const auto& t : w) {
            auto [it, fresh] = writer.emplace(t, i);
            if (!fresh)
              semantic_fail(s.children[i].line != 0 ? s.children[i].line : s.line,
                            "'" + t + "' is written twice in the same par block");
          }
        }
        return;
      }
    }
  }

  void check_shifts(const Expr& e, int line) {
    if ((e.op == ExprOp::Shl || e.op == ExprOp::Shr) && e.operands[1].op != ExprOp::Const)
      semantic_fail(line, "shift amount must be a constant literal");
    for (const auto& o : e.operands) check_shifts(o, line);
  }

  // Earliest cycle at which each variable is written. Ports marked `in` are
  // available from cycle 0.
  void record_writes(const Stmt& s, uint64_t start) {
    switch (s.kind) {
      case StmtKind::Assign: {
        auto [it, fresh] = first_write_.emplace(s.target, start);
        if (!fresh) it->second = std::min(it->second, start);
        return;
      }
      case StmtKind::Seq:
        for (const auto& c : s.children) {
          record_writes(c, start);
          start += source_cycles(c);
        }
        return;
      case StmtKind::Par:
        for (const auto& c : s.children) record_writes(c, start);
        return;
    }
  }

  // An assignment in cycle t reads values committed by cycles < t.
  void check_reads(const Stmt& s, uint64_t start) {
    switch (s.kind) {
      case StmtKind::Assign: {
        std::vector<std::string> reads;
        collect_reads(s.expr, reads);
        for (const auto& r : reads) {
          auto it = first_write_.find(r);
          if (it == first_write_.end() || it->second >= start)
            semantic_fail(s.line, "'" + r + "' is read before it is assigned");
        }
        return;
      }
      case StmtKind::Seq:
        for (const auto& c : s.children) {
          check_reads(c, start);
          start += source_cycles(c);
        }
        return;
      case StmtKind::Par:
        for (const auto& c : s.children) check_reads(c, start);
        return;
    }
  }

  const Program& prog_;
  std::map<std::string, uint64_t> first_write_;
};

}  // namespace

void check_semantics(const Program& program) { SemanticChecker(program).run(); }

Program parse(std::span<const Token> tokens) {
  Program p = Parser(tokens).run();
  check_semantics(p);
  return p;
}

Program parse_source(std::string_view source) {
  auto toks = tokenize(source);
  return parse(toks);
}

}  // namespace minihls::frontend
