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

// Behavioral description language (BDL) front end: tokens, syntax tree,
// parser, and the destination-width rule.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace minihls::frontend {

enum class TokenKind { Identifier, IntegerLiteral, Keyword, Operator, Punctuation };

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;
  uint64_t value = 0;  // IntegerLiteral only

  friend bool operator==(const Token&, const Token&) = default;
};

const char* token_kind_name(TokenKind kind);

// Splits BDL source into tokens. `//` comments and whitespace are dropped.
// Throws LexError on any character outside the BDL alphabet.
std::vector<Token> tokenize(std::string_view source);

enum class ExprOp { Const, Var, Not, Add, Sub, Mul, And, Or, Xor, Shl, Shr };

const char* expr_op_symbol(ExprOp op);
bool is_binary(ExprOp op);

struct Expr {
  ExprOp op = ExprOp::Const;
  uint64_t value = 0;       // Const
  std::string name;         // Var
  std::vector<Expr> operands;

  static Expr constant(uint64_t value);
  static Expr var(std::string name);
  static Expr unary(ExprOp op, Expr operand);
  static Expr binary(ExprOp op, Expr lhs, Expr rhs);

  // Number of operator nodes (everything except Const and Var).
  size_t operator_count() const;

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class StmtKind { Assign, Seq, Par };

struct Stmt {
  StmtKind kind = StmtKind::Seq;
  std::string target;  // Assign
  Expr expr;           // Assign
  std::vector<Stmt> children;
  int line = 0;        // ignored by ==

  static Stmt assign(std::string target, Expr expr, int line = 0);
  static Stmt seq(std::vector<Stmt> children, int line = 0);
  static Stmt par(std::vector<Stmt> children, int line = 0);

  friend bool operator==(const Stmt& a, const Stmt& b);
};

enum class PortDir { In, Out };

struct PortDecl {
  std::string name;
  PortDir dir = PortDir::In;
  unsigned width = 1;
  friend bool operator==(const PortDecl&, const PortDecl&) = default;
};

struct VarDecl {
  std::string name;
  unsigned width = 1;
  friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

inline constexpr unsigned kMaxWidth = 64;

struct Program {
  std::string name;
  std::vector<PortDecl> ports;
  std::vector<VarDecl> locals;
  Stmt body;

  std::optional<unsigned> width_of(std::string_view name) const;
  const PortDecl* find_port(std::string_view name) const;
  std::vector<const PortDecl*> inputs() const;
  std::vector<const PortDecl*> outputs() const;

  friend bool operator==(const Program&, const Program&) = default;
};

// Parses a token stream and runs the semantic checks (declarations, par
// write conflicts, read-before-assign). Throws ParseError or SemanticError.
Program parse(std::span<const Token> tokens);

// tokenize + parse.
Program parse_source(std::string_view source);

// Rejects programs that violate a Program/Stmt invariant. parse() calls this;
// it is exposed for programs built directly in C++.
void check_semantics(const Program& program);

// Evaluation width of every expression node, keyed by node address. Every
// node takes the width of the assignment target it feeds.
using WidthReport = std::unordered_map<const Expr*, unsigned>;

// Applies the destination-width rule. Throws WidthError when a constant does
// not fit its destination width.
WidthReport check_widths(const Program& program);

// Canonical BDL text; parse_source(pretty_print(p)) == p.
std::string pretty_print(const Program& program);
std::string pretty_print(const Expr& expr);

// Cycle count: Assign = 1 cycle, Seq = sum, Par = max.
uint64_t source_cycles(const Stmt& stmt);

}  // namespace minihls::frontend
