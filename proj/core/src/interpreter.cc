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

#include "storyboard/interpreter.h"

#include "storyboard/catalog.h"

namespace storyboard {
namespace {

void record_pairs(const Store& sigma, std::set<std::pair<QualifiedId, QualifiedId>>& pairs) {
  for (const auto& [holder, value] : sigma) {
    for (const QualifiedId& origin : value.taint) pairs.emplace(origin, holder);
  }
}

}  // namespace

Interpreter::Interpreter(const AppModel& model, Scenario scenario) : model_(model), scenario_(std::move(scenario)) {
  for_each_operation(model_, [&](const OpSite& site) {
    if (site.position == OpPosition::kBoolean) boolean_ops_.insert(site.use->name);
    if (!site.use->capability) return;
    const CapabilityRef& cap = *site.use->capability;
    switch (resolve_capability(model_, cap)) {
      case CapabilityResolution::kBuiltin:
        if (find_builtin(cap.resource, cap.capability)->source == Trust::kUntrusted) {
          untrusted_ops_.insert(site.use->name);
        }
        break;
      case CapabilityResolution::kForeign:
        untrusted_ops_.insert(site.use->name);
        break;
      default:
        break;
    }
  });
}

bool Interpreter::untrusted_source(const std::string& op) const { return untrusted_ops_.count(op) > 0; }

int Interpreter::ordinal(std::string_view op) const {
  auto it = ordinals_.find(op);
  return it == ordinals_.end() ? 0 : it->second;
}

Configuration Interpreter::init_app() {
  Configuration config;
  if (!scenario_.via_uri) {
    config.current = start_screen(model_);
    return config;
  }
  const Scenario::ViaUri& via = *scenario_.via_uri;
  const Uri wanted = Uri::parse(via.uri);
  for (const Screen& s : model_.screens) {
    for (const Uri& u : s.uris) {
      if (u.base != wanted.base) continue;
      config.current = s.name;
      for (const std::string& p : u.params) {
        auto arg = via.args.find(p);
        if (arg == via.args.end()) throw ScenarioError("launch URI is missing argument " + p);
        const QualifiedId id = qualify(p, s.name);
        config.sigma[id] = Value{arg->second, {id}};
      }
      return config;
    }
  }
  throw ScenarioError("no screen is reachable through URI " + via.uri);
}

OpResult Interpreter::next_result(const OperationUse& use, bool boolean) {
  const int n = ++ordinals_[use.name];
  auto it = scenario_.op_results.find(use.name);
  if (it != scenario_.op_results.end() && static_cast<std::size_t>(n) <= it->second.size()) {
    return it->second[static_cast<std::size_t>(n - 1)];
  }
  if (scenario_.strict) {
    throw ScenarioError("no scripted result for invocation " + std::to_string(n) + " of " + use.name);
  }
  if (boolean) return true;
  return "⟨" + use.name + "#" + std::to_string(n) + "⟩";
}

Value Interpreter::eval_operation(const OperationUse& use, const Configuration& config) {
  if (use.capability) {
    const CapabilityResolution r = resolve_capability(model_, *use.capability);
    if (r != CapabilityResolution::kBuiltin && r != CapabilityResolution::kCustom) {
      throw SemanticError("operation " + use.name + " uses " + use.capability->resource + "." +
                          use.capability->capability + ", which no resource of this app offers");
    }
  }
  Value result;
  for (const Arg& a : use.args) {
    if (auto v = resolve_value(a.value, config)) result.taint.insert(v->taint.begin(), v->taint.end());
  }
  if (untrusted_source(use.name)) result.taint.insert(QualifiedId::operation(use.name));
  const OpResult r = next_result(use, boolean_ops_.count(use.name) > 0);
  if (const auto* text = std::get_if<std::string>(&r)) {
    result.payload = *text;
  } else {
    result.payload = std::get<bool>(r) ? "true" : "false";
  }
  return result;
}

std::optional<Value> Interpreter::resolve_value(const ValueBinding& binding, const Configuration& config) {
  const std::string screen = config.current.value_or("");
  if (const auto* lit = std::get_if<Literal>(&binding.node)) return Value{lit->text, {}};
  if (const OperationUse* use = binding.op()) return eval_operation(*use, config);
  const QualifiedId id = qualify(*binding.reference(), screen);
  if (auto it = config.sigma.find(id); it != config.sigma.end()) return it->second;
  if (std::holds_alternative<ParamRef>(binding.node)) {
    if (auto env = scenario_.uri_env.find(id.base); env != scenario_.uri_env.end()) {
      return Value{env->second, {id}};
    }
  }
  return std::nullopt;
}

bool Interpreter::eval_bool(const BoolExpr& expr, const Configuration& config) {
  if (const bool* b = std::get_if<bool>(&expr.node)) return *b;
  if (const auto* use = std::get_if<OperationUse>(&expr.node)) {
    const Value v = eval_operation(*use, config);
    if (v.payload == "true") return true;
    if (v.payload == "false") return false;
    throw ScenarioError("operation " + use->name + " is used as a condition but produced \"" + v.payload + "\"");
  }
  if (const auto* a = std::get_if<BoolAnd>(&expr.node)) return eval_bool(*a->lhs, config) && eval_bool(*a->rhs, config);
  if (const auto* o = std::get_if<BoolOr>(&expr.node)) return eval_bool(*o->lhs, config) || eval_bool(*o->rhs, config);
  return !eval_bool(*std::get<BoolNot>(expr.node).operand, config);
}

Store Interpreter::bind(const Transition& t, const Configuration& config) {
  Store bound;
  for (const ParamBinding& b : t.bindings) {
    if (auto v = resolve_value(b.value, config)) bound[qualify(b.target, t.dest)] = std::move(*v);
  }
  return bound;
}

StepResult Interpreter::step(const Configuration& config) {
  if (config.terminal()) throw SemanticError("a terminated app cannot step");
  ++steps_;
  if (scenario_.stop_after && steps_ > *scenario_.stop_after) {
    return {Configuration{}, std::string(kRuleStop)};
  }
  const Screen* screen = model_.find_screen(*config.current);
  if (screen == nullptr) throw LookupError("unknown screen " + *config.current);

  Configuration next = config;
  for (const Widget& w : screen->widgets) {
    if (auto v = resolve_value(w.value, next)) next.sigma[qualify(w.id, screen->name)] = std::move(*v);
  }
  record_pairs(next.sigma, observed_);

  std::optional<UserAction> gesture;
  if (next_gesture_ < scenario_.gestures.size()) gesture = scenario_.gestures[next_gesture_++];

  for (const Transition& t : out_transitions(model_, screen->name)) {
    if (t.user_action && !(gesture && *gesture == *t.user_action)) continue;
    if (t.guard && !eval_bool(*t.guard, next)) continue;

    Store bound = bind(t, next);
    record_pairs(bound, observed_);
    if (model_.find_proxy(t.dest) != nullptr) {
      outbound_ = std::move(bound);
      return {Configuration{}, std::string(kRuleProxyExit)};
    }
    if (t.dest == screen->name) {
      Configuration self{screen->name, {}};
      for (auto& [id, value] : next.sigma) {
        if (screen->find_widget(id.base) == nullptr || id.owner != screen->name) self.sigma.emplace(id, value);
      }
      for (auto& [id, value] : bound) self.sigma[id] = std::move(value);
      return {std::move(self), std::string(kRuleSelfTransition)};
    }
    return {Configuration{t.dest, std::move(bound)}, std::string(kRuleTransition)};
  }
  return {std::move(next), std::string(kRuleNoTransition)};
}

Configuration init_app(const AppModel& model, const Scenario& scenario) {
  return Interpreter(model, scenario).init_app();
}

Trace run(const AppModel& model, const Scenario& scenario, int step_budget) {
  Trace trace;
  Interpreter interp(model, scenario);
  try {
    Configuration config = interp.init_app();
    record_pairs(config.sigma, trace.taint_pairs);
    trace.steps.push_back({std::string(kRuleLaunch), config});
    for (int i = 0; i < step_budget && !config.terminal(); ++i) {
      StepResult r = interp.step(config);
      config = std::move(r.config);
      if (r.rule == kRuleProxyExit) trace.outbound = interp.outbound();
      trace.steps.push_back({std::move(r.rule), config});
    }
  } catch (const ScenarioError& e) {
    trace.error = std::string("scenario error: ") + e.what();
  } catch (const SemanticError& e) {
    trace.error = std::string("semantic error: ") + e.what();
  } catch (const LookupError& e) {
    trace.error = std::string("lookup error: ") + e.what();
  }
  trace.taint_pairs.insert(interp.observed_pairs().begin(), interp.observed_pairs().end());
  return trace;
}

std::set<std::pair<QualifiedId, QualifiedId>> taint_pairs(const Trace& trace) { return trace.taint_pairs; }

}  // namespace storyboard
