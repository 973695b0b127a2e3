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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minihls {

// Stable error classes. The numeric values are mirrored by the C API status
// codes in include/minihls/minihls.h.
enum class ErrorCode : int {
  Lex = 1,
  Parse = 2,
  Semantic = 3,
  Width = 4,
  Cycle = 5,
  Deadline = 6,
  Allocation = 7,
  InfeasibleBinding = 8,
  Size = 9,
  FanIn = 10,
  PlaFormat = 11,
  Input = 12,
  Watchdog = 13,
  Netlist = 14,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class LexError : public Error {
 public:
  LexError(int line, int column, char32_t offending, const std::string& message)
      : Error(ErrorCode::Lex, message), line(line), column(column), offending(offending) {}
  int line;
  int column;
  char32_t offending;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string expected, const std::string& message)
      : Error(ErrorCode::Parse, message), line(line), column(column), expected(std::move(expected)) {}
  int line;
  int column;
  std::string expected;
};

class SemanticError : public Error {
 public:
  SemanticError(int line, const std::string& message) : Error(ErrorCode::Semantic, message), line(line) {}
  int line;
};

class WidthError : public Error {
 public:
  WidthError(int line, uint64_t value, unsigned width, const std::string& message)
      : Error(ErrorCode::Width, message), line(line), value(value), width(width) {}
  int line;
  uint64_t value;
  unsigned width;
};

#define MINIHLS_SIMPLE_ERROR(Name, Code)                                      \
  class Name : public Error {                                                 \
   public:                                                                    \
    explicit Name(const std::string& message) : Error(ErrorCode::Code, message) {} \
  };

MINIHLS_SIMPLE_ERROR(CycleError, Cycle)
MINIHLS_SIMPLE_ERROR(DeadlineError, Deadline)
MINIHLS_SIMPLE_ERROR(AllocationError, Allocation)
MINIHLS_SIMPLE_ERROR(InfeasibleBinding, InfeasibleBinding)
MINIHLS_SIMPLE_ERROR(SizeError, Size)
MINIHLS_SIMPLE_ERROR(FanInError, FanIn)
MINIHLS_SIMPLE_ERROR(InputError, Input)
MINIHLS_SIMPLE_ERROR(WatchdogError, Watchdog)
MINIHLS_SIMPLE_ERROR(NetlistError, Netlist)

#undef MINIHLS_SIMPLE_ERROR

class PlaFormatError : public Error {
 public:
  PlaFormatError(int line, const std::string& message)
      : Error(ErrorCode::PlaFormat, "line " + std::to_string(line) + ": " + message), line(line) {}
  int line;
};

}  // namespace minihls
