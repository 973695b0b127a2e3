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

namespace minihls {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Lex: return "LexError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Semantic: return "SemanticError";
    case ErrorCode::Width: return "WidthError";
    case ErrorCode::Cycle: return "CycleError";
    case ErrorCode::Deadline: return "DeadlineError";
    case ErrorCode::Allocation: return "AllocationError";
    case ErrorCode::InfeasibleBinding: return "InfeasibleBinding";
    case ErrorCode::Size: return "SizeError";
    case ErrorCode::FanIn: return "FanInError";
    case ErrorCode::PlaFormat: return "PlaFormatError";
    case ErrorCode::Input: return "InputError";
    case ErrorCode::Watchdog: return "WatchdogError";
    case ErrorCode::Netlist: return "NetlistError";
  }
  return "Error";
}

}  // namespace minihls
