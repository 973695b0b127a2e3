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

#include <array>
#include <cstdio>
#include <limits>

#include "errors.hpp"
#include "frontend.hpp"

namespace minihls::frontend {

namespace {

constexpr std::array<std::string_view, 7> kKeywords = {"module", "in", "out", "var", "seq", "par", "int"};

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

// Decodes the code point starting at `pos` for diagnostics. Invalid UTF-8
// yields the raw byte value.
char32_t decode_at(std::string_view s, size_t pos) {
  auto b0 = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = b0;
  if (b0 >= 0xF0) { extra = 3; cp = b0 & 0x07; }
  else if (b0 >= 0xE0) { extra = 2; cp = b0 & 0x0F; }
  else if (b0 >= 0xC0) { extra = 1; cp = b0 & 0x1F; }
  else return b0;
  if (pos + extra >= s.size()) return b0;
  for (int i = 1; i <= extra; ++i) {
    auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return b0;
    cp = (cp << 6) | (b & 0x3F);
  }
  return cp;
}

std::string describe_char(char32_t c) {
  if (c >= 0x20 && c < 0x7F) return std::string("'") + static_cast<char>(c) + "'";
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  return buf;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      int line = line_, col = col_;
      size_t begin = pos_;
      if (is_ident_start(c)) {
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        std::string text(src_.substr(begin, pos_ - begin));
        bool kw = false;
        for (auto k : kKeywords) kw = kw || text == k;
        out.push_back({kw ? TokenKind::Keyword : TokenKind::Identifier, std::move(text), line, col, 0});
        continue;
      }
      if (is_digit(c)) {
        out.push_back(lex_number(line, col));
        continue;
      }
      if (c == '<' || c == '>') {
        if (peek(1) != c) fail(line, col, static_cast<unsigned char>(c), "expected '" + std::string(2, c) + "'");
        advance();
        advance();
        out.push_back({TokenKind::Operator, std::string(2, c), line, col, 0});
        continue;
      }
      switch (c) {
        case '=': case '+': case '-': case '*': case '&': case '|': case '^': case '~':
          advance();
          out.push_back({TokenKind::Operator, std::string(1, c), line, col, 0});
          continue;
        case '(': case ')': case '{': case '}': case ';': case ':': case ',':
          advance();
          out.push_back({TokenKind::Punctuation, std::string(1, c), line, col, 0});
          continue;
        default:
          break;
      }
      char32_t cp = decode_at(src_, pos_);
      fail(line, col, cp, "unexpected character " + describe_char(cp));
    }
    return out;
  }

 private:
  char peek(size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  void advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
  }

  [[noreturn]] void fail(int line, int col, char32_t cp, const std::string& what) {
    throw LexError(line, col, cp, std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }

  Token lex_number(int line, int col) {
    size_t begin = pos_;
    unsigned base = 10;
    if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) base = 16;
    if (src_[pos_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) base = 2;
    if (base != 10) {
      advance();
      advance();
    }
    uint64_t value = 0;
    size_t digits = 0;
    constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
    while (pos_ < src_.size()) {
      char d = src_[pos_];
      unsigned v;
      if (is_digit(d)) v = static_cast<unsigned>(d - '0');
      else if (d >= 'a' && d <= 'f') v = static_cast<unsigned>(d - 'a' + 10);
      else if (d >= 'A' && d <= 'F') v = static_cast<unsigned>(d - 'A' + 10);
      else if (d == '_' || is_ident_start(d)) fail(line_, col_, static_cast<unsigned char>(d), "malformed integer literal");
      else break;
      if (v >= base) fail(line_, col_, static_cast<unsigned char>(d), "digit out of range for literal base");
      if (value > (kMax - v) / base) fail(line, col, static_cast<unsigned char>(src_[begin]), "integer literal does not fit in 64 bits");
      value = value * base + v;
      ++digits;
      advance();
    }
    if (digits == 0) fail(line, col, static_cast<unsigned char>(src_[begin]), "integer literal has no digits");
    return {TokenKind::IntegerLiteral, std::string(src_.substr(begin, pos_ - begin)), line, col, value};
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer-literal";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace minihls::frontend
