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

#ifndef STORYBOARD_PARSER_H_
#define STORYBOARD_PARSER_H_

#include <optional>
#include <string_view>
#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

// Either a model or a nonempty list of error diagnostics, never both.
struct ParseOutcome {
  std::optional<AppModel> model;
  std::vector<Diagnostic> errors;

  bool ok() const { return model.has_value(); }
};

// Parses `.sbd` storyboard text. The parser recovers at item boundaries
// (top-level items and screen body items) so one call reports every
// syntax error it can find.
//
// Syntax error codes: SY001 lexical, SY002 unexpected token, SY003 unknown
// widget kind, SY004 unknown gesture, SY005 unknown access level, SY006
// repeated attribute.
ParseOutcome parse(std::string_view text, std::string_view file);

}  // namespace storyboard

#endif  // STORYBOARD_PARSER_H_
