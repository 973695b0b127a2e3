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

/* Builds the public header as C and runs a short pipeline through it. */

#include <minihls/minihls.h>
#include <stdio.h>
#include <string.h>

static int fail(const char* what, mh_status st) {
  fprintf(stderr, "%s: %s (%s)\n", what, mh_status_name(st), mh_last_error());
  return 1;
}

int main(void) {
  mh_program* program = NULL;
  mh_design* design = NULL;
  mh_synth_options options;
  char* outputs = NULL;
  uint64_t cycles = 0, datapath_cycles = 0;
  int ok;
  mh_status st;

  st = mh_program_parse("module s(in a: 4, in b: 4, out s: 9) { s = a*a + b*b + 4*b; }", &program);
  if (st != MH_OK) return fail("parse", st);
  memset(&options, 0, sizeof options);
  options.resources = "mul=2,add=1";
  st = mh_synthesize(program, &options, &design);
  if (st != MH_OK) return fail("synthesize", st);
  st = mh_design_simulate(design, "a=3,b=2", &outputs, &cycles, &datapath_cycles, NULL);
  if (st != MH_OK) return fail("simulate", st);
  ok = strcmp(outputs, "s=21") == 0 && datapath_cycles == 3 && mh_design_length(design) == 3;
  printf("%s: %s, %llu cycles\n", ok ? "ok" : "FAILED", outputs, (unsigned long long)cycles);
  mh_string_free(outputs);
  mh_design_free(design);
  mh_program_free(program);
  return ok ? 0 : 1;
}
