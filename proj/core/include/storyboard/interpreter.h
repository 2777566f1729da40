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

#ifndef STORYBOARD_INTERPRETER_H_
#define STORYBOARD_INTERPRETER_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"
#include "storyboard/scenario.h"

namespace storyboard {

struct Value {
  std::string payload;
  std::set<QualifiedId> taint;  // identifiers whose data this value carries

  friend bool operator==(const Value&, const Value&) = default;
};

using Store = std::map<QualifiedId, Value>;

// <current, sigma>. No current screen means the app has terminated.
struct Configuration {
  std::optional<std::string> current;
  Store sigma;

  bool terminal() const { return !current.has_value(); }
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// The scenario cannot drive the run (bad launch URI, unscripted operation in
// strict mode, result of the wrong type).
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The model asks for something the semantics forbids, e.g. a capability no
// resource offers.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rule names recorded in traces.
inline constexpr std::string_view kRuleLaunch = "launch";
inline constexpr std::string_view kRuleStop = "app-stop";
inline constexpr std::string_view kRuleTransition = "transition";
inline constexpr std::string_view kRuleSelfTransition = "self-transition";
inline constexpr std::string_view kRuleNoTransition = "no-transition";
inline constexpr std::string_view kRuleProxyExit = "proxy-exit";

struct StepResult {
  Configuration config;
  std::string rule;
};

// Small-step interpreter bound to one model and one scenario. Consumes the
// scenario's gestures and scripted operation results as it goes.
class Interpreter {
 public:
  Interpreter(const AppModel& model, Scenario scenario);

  Configuration init_app();
  StepResult step(const Configuration& config);

  bool eval_bool(const BoolExpr& expr, const Configuration& config);
  Value eval_operation(const OperationUse& use, const Configuration& config);
  std::optional<Value> resolve_value(const ValueBinding& binding, const Configuration& config);

  // Invocations of `op` so far.
  int ordinal(std::string_view op) const;
  int steps_taken() const { return steps_; }
  // Values handed to a proxy screen by the last proxy-exit step.
  const Store& outbound() const { return outbound_; }
  // (origin, holder) pairs for every value stored so far.
  const std::set<std::pair<QualifiedId, QualifiedId>>& observed_pairs() const { return observed_; }

 private:
  bool untrusted_source(const std::string& op) const;
  OpResult next_result(const OperationUse& use, bool boolean);
  Store bind(const Transition& t, const Configuration& config);

  const AppModel& model_;
  Scenario scenario_;
  std::set<std::string> untrusted_ops_;
  std::set<std::string> boolean_ops_;
  std::map<std::string, int, std::less<>> ordinals_;
  std::size_t next_gesture_ = 0;
  int steps_ = 0;
  Store outbound_;
  std::set<std::pair<QualifiedId, QualifiedId>> observed_;
};

Configuration init_app(const AppModel& model, const Scenario& scenario);

struct TraceStep {
  std::string rule;
  Configuration config;
};

struct Trace {
  std::vector<TraceStep> steps;  // first is the launch configuration
  // (origin, holder) whenever a value tainted by origin was stored under holder.
  std::set<std::pair<QualifiedId, QualifiedId>> taint_pairs;
  Store outbound;                    // arguments passed on proxy exit
  std::optional<std::string> error;  // set when the run aborted

  bool terminated() const { return !steps.empty() && steps.back().config.terminal(); }
};

// Steps until the app terminates or `step_budget` steps have run. Scenario
// and semantic errors end the run with the partial trace and `error` set.
Trace run(const AppModel& model, const Scenario& scenario, int step_budget);

std::set<std::pair<QualifiedId, QualifiedId>> taint_pairs(const Trace& trace);

}  // namespace storyboard

#endif  // STORYBOARD_INTERPRETER_H_
