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

#ifndef STORYBOARD_SCENARIO_H_
#define STORYBOARD_SCENARIO_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

using OpResult = std::variant<std::string, bool>;

// A scripted environment for one run of the interpreter.
struct Scenario {
  struct ViaUri {
    std::string uri;
    std::map<std::string, std::string> args;
    friend bool operator==(const ViaUri&, const ViaUri&) = default;
  };

  std::optional<ViaUri> via_uri;                            // nullopt = normal launch
  std::vector<UserAction> gestures;                         // one consumed per step
  std::map<std::string, std::vector<OpResult>> op_results;  // per name, by invocation ordinal
  std::map<std::string, std::string> uri_env;               // values external apps provide
  std::optional<int> stop_after;                            // stop once this many steps ran
  // When set, an operation invoked beyond its scripted results is an error
  // instead of taking the default result.
  bool strict = false;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioOutcome {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> errors;  // SC001, nonempty iff scenario is absent

  bool ok() const { return scenario.has_value(); }
};

// Parses the line-oriented `.scn` format:
//
//   launch | launch uri "app://contacts/{y}" y="0123"
//   click W | swipe W | drag W
//   op name -> "text" | op name -> true | op name -> false
//   env param="text"
//   stop
//
// `#` starts a comment. `stop` stops the app after the gestures listed
// before it have been played.
ScenarioOutcome parse_scenario(std::string_view text, std::string_view file);

}  // namespace storyboard

#endif  // STORYBOARD_SCENARIO_H_
