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

/* C interface to the minihls toolchain.
 *
 * Every function returns an mh_status. On failure the message is available
 * from mh_last_error() on the calling thread until the next call. Strings
 * returned through char** parameters are heap allocated and must be released
 * with mh_string_free(). Handles are released with the matching *_free().
 */

#ifndef MINIHLS_MINIHLS_H
#define MINIHLS_MINIHLS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MINIHLS_BUILDING)
#define MH_API __declspec(dllexport)
#else
#define MH_API __declspec(dllimport)
#endif
#else
#define MH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_ERR_LEX = 1,
  MH_ERR_PARSE = 2,
  MH_ERR_SEMANTIC = 3,
  MH_ERR_WIDTH = 4,
  MH_ERR_CYCLE = 5,
  MH_ERR_DEADLINE = 6,
  MH_ERR_ALLOCATION = 7,
  MH_ERR_INFEASIBLE_BINDING = 8,
  MH_ERR_SIZE = 9,
  MH_ERR_FAN_IN = 10,
  MH_ERR_PLA_FORMAT = 11,
  MH_ERR_INPUT = 12,
  MH_ERR_WATCHDOG = 13,
  MH_ERR_NETLIST = 14,
  MH_ERR_IO = 20,
  MH_ERR_INVALID_ARGUMENT = 21,
  MH_ERR_INTERNAL = 22
} mh_status;

typedef struct mh_program mh_program; /* checked BDL program */
typedef struct mh_design mh_design;   /* scheduled, bound and RTL-built program */
typedef struct mh_table mh_table;     /* truth table */
typedef struct mh_netlist mh_netlist; /* gate netlist */

typedef enum mh_netlist_format { MH_NETLIST_VERILOG = 0, MH_NETLIST_VHDL = 1, MH_NETLIST_JSON = 2 } mh_netlist_format;
typedef enum mh_design_format { MH_DESIGN_VERILOG = 0, MH_DESIGN_JSON = 1 } mh_design_format;
typedef enum mh_map_target { MH_MAP_AOI = 0, MH_MAP_NAND2 = 1 } mh_map_target;

MH_API const char* mh_version(void);
MH_API const char* mh_status_name(mh_status status);
MH_API const char* mh_last_error(void);
MH_API void mh_string_free(char* s);

/* Reads a whole file. */
MH_API mh_status mh_read_file(const char* path, char** out);

/* Programs */
MH_API mh_status mh_program_parse(const char* source, mh_program** out);
MH_API void mh_program_free(mh_program* program);
MH_API mh_status mh_program_name(const mh_program* program, char** out);
MH_API mh_status mh_program_pretty(const mh_program* program, char** out);
MH_API size_t mh_program_operation_count(const mh_program* program);
MH_API size_t mh_program_output_count(const mh_program* program);
MH_API mh_status mh_program_dot(const mh_program* program, int strength_reduce, char** out);
/* `inputs` is "a=3,b=0x2". `outputs` receives "s=21" ("name=value" joined by ", "). */
MH_API mh_status mh_program_interpret(const mh_program* program, const char* inputs, char** outputs,
                                      uint64_t* source_cycles);
/* Gate-level lowering; every variable must be one bit wide. */
MH_API mh_status mh_program_lower(const mh_program* program, mh_netlist** out);

/* Synthesis */
typedef struct mh_synth_options {
  const char* resources;  /* "mul=2,add=1"; ignored when auto_allocate is set */
  const char* latencies;  /* "mul=2"; NULL for unit latencies */
  int strength_reduce;
  int auto_allocate;
} mh_synth_options;

MH_API mh_status mh_synthesize(const mh_program* program, const mh_synth_options* options, mh_design** out);
MH_API void mh_design_free(mh_design* design);
MH_API unsigned mh_design_length(const mh_design* design);
MH_API unsigned mh_design_register_count(const mh_design* design);
MH_API unsigned mh_design_state_count(const mh_design* design);
MH_API mh_status mh_design_allocation(const mh_design* design, char** out);
/* Schedule/binding report: human-readable text, or JSON when `json` is set. */
MH_API mh_status mh_design_report(const mh_design* design, int json, char** out);
MH_API mh_status mh_design_emit(const mh_design* design, mh_design_format format, char** out);
/* `trace` may be NULL; when non-NULL it receives the per-cycle trace. */
MH_API mh_status mh_design_simulate(const mh_design* design, const char* inputs, char** outputs, uint64_t* cycles,
                                    uint64_t* datapath_cycles, char** trace);
/* Compares the interpreter against RTL simulation. `passed` is 1 when no
 * vector mismatched. */
MH_API mh_status mh_design_cosim(const mh_design* design, uint64_t trials, uint64_t seed, int json, char** report,
                                 int* passed);

/* Truth tables */
MH_API mh_status mh_table_read_pla(const char* text, mh_table** out);
MH_API void mh_table_free(mh_table* table);
MH_API mh_status mh_table_write_pla(const mh_table* table, char** out);
MH_API size_t mh_table_output_count(const mh_table* table);

typedef struct mh_minimize_stats {
  unsigned products_before;
  unsigned products_after;
  unsigned literals_before;
  unsigned literals_after;
} mh_minimize_stats;

/* Minimizes every output and builds the AND-OR-INVERT netlist. `covers`
 * (may be NULL) receives one "F = AB + BC" line per output. */
MH_API mh_status mh_table_minimize(const mh_table* table, mh_netlist** out, mh_minimize_stats* stats, char** covers);
/* Exhaustive comparison of a netlist against the table. */
MH_API mh_status mh_table_check(const mh_table* table, const mh_netlist* netlist, int* equivalent);

/* Netlists */
MH_API void mh_netlist_free(mh_netlist* netlist);
MH_API mh_status mh_netlist_read_verilog(const char* text, mh_netlist** out);
/* Maps onto the target library and checks the result against the input
 * exhaustively; MH_ERR_NETLIST if they differ. */
MH_API mh_status mh_netlist_map(const mh_netlist* netlist, mh_map_target target, mh_netlist** out);
/* Rewrites wide AND/OR/XOR gates as balanced two-input trees. */
MH_API mh_status mh_netlist_split(const mh_netlist* netlist, mh_netlist** out);
MH_API size_t mh_netlist_gate_count(const mh_netlist* netlist);
MH_API mh_status mh_netlist_emit(const mh_netlist* netlist, mh_netlist_format format, const char* name, char** out);
MH_API mh_status mh_netlist_equivalent(const mh_netlist* a, const mh_netlist* b, int* equivalent);

#ifdef __cplusplus
}
#endif

#endif /* MINIHLS_MINIHLS_H */
