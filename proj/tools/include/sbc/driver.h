// Copyright 2026 The Storyboard Compiler Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SBC_DRIVER_H_
#define SBC_DRIVER_H_

#include <ostream>
#include <string>
#include <vector>

#include "storyboard/diagnostic.h"

namespace sbc {

enum class OutputFormat { kHuman, kMachine };

// Exit codes.
inline constexpr int kExitClean = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitFailure = 2;  // usage, IO or parse failure

// A diagnostic together with the input it was found in. Diagnostics without
// a span are reported against `file` at line 0.
struct Finding {
  std::string file;
  storyboard::Diagnostic diagnostic;
};

// Renders findings sorted stably by (file, line, code).
//
// Human: `severity code file:line:col message`, then one indented line per
// witness hop. Machine: one JSON object per line with severity, code, file,
// line, col, message and witness.
std::string emit_diagnostics(std::vector<Finding> findings, OutputFormat format, bool color = false);

// Runs the `sbc` command line. argv[0] is the program name.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sbc

#endif  // SBC_DRIVER_H_
