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

#include "storyboard/formatter.h"

#include <sstream>

namespace storyboard {
namespace {

bool is_binary(const BoolExpr& e) {
  return std::holds_alternative<BoolAnd>(e.node) || std::holds_alternative<BoolOr>(e.node);
}

std::string format_operand(const BoolExpr& e) {
  return is_binary(e) ? "(" + format_guard(e) + ")" : format_guard(e);
}

std::string format_attr_value(const AttrValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return quote(*s);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  const auto& list = std::get<std::vector<std::string>>(value);
  std::string out = "{";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ", ";
    out += quote(list[i]);
  }
  return out + "}";
}

void format_resource(std::ostream& os, const Resource& r) {
  os << "resource " << r.name << " access " << to_string(r.access) << " {\n";
  for (const Capability& c : r.capabilities) {
    os << "  " << (c.priv ? "priv " : "") << "capability " << c.name << "\n";
  }
  os << "}\n";
}

void format_transition(std::ostream& os, const Transition& t) {
  os << "  transition " << t.id << " order " << t.order << " dest " << t.dest;
  if (t.user_action || t.guard) {
    os << " cond ";
    if (t.user_action) {
      os << t.user_action->widget << "." << to_string(t.user_action->gesture);
      if (t.guard) os << " and ";
    }
    if (t.guard) os << (t.user_action ? format_operand(*t.guard) : format_guard(*t.guard));
  }
  if (!t.bindings.empty()) {
    os << " {\n";
    for (const ParamBinding& b : t.bindings) {
      os << "    param " << b.target << " = " << (b.safe ? "safe " : "") << format_value(b.value) << "\n";
    }
    os << "  }";
  }
  os << "\n";
}

void format_screen(std::ostream& os, const Screen& s) {
  if (s.start) os << "start ";
  os << "screen " << s.name;
  for (const Uri& u : s.uris) os << " uri " << quote(u.text);
  os << " {\n";
  for (const std::string& p : s.params) os << "  param " << p << "\n";
  for (const Widget& w : s.widgets) {
    os << "  " << (w.safe ? "safe " : "") << to_string(w.kind) << " " << w.id << " = " << format_value(w.value);
    if (!w.attributes.empty()) os << " " << format_attributes(w.attributes);
    os << "\n";
  }
  for (const Transition& t : s.transitions) format_transition(os, t);
  os << "}\n";
}

void format_proxy(std::ostream& os, const ProxyScreen& p) {
  os << "proxy " << (p.safe ? "safe " : "") << p.name;
  if (p.app_id) os << " app " << quote(*p.app_id);
  os << " uri " << quote(p.uri.text) << "\n";
}

}  // namespace

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string format_attributes(const Attributes& attributes) {
  std::string out = "[";
  bool first = true;
  for (const auto& [key, value] : attributes) {
    if (!first) out += ", ";
    first = false;
    out += key + "=" + format_attr_value(value);
  }
  return out + "]";
}

std::string format_call(const OperationUse& use) {
  std::string out = use.name + "(";
  for (std::size_t i = 0; i < use.args.size(); ++i) {
    if (i > 0) out += ", ";
    if (use.args[i].safe) out += "safe ";
    out += format_value(use.args[i].value);
  }
  out += ")";
  if (use.capability) out += " use " + use.capability->resource + "." + use.capability->capability;
  if (!use.attributes.empty()) out += " " + format_attributes(use.attributes);
  return out;
}

std::string format_value(const ValueBinding& value) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Literal>) {
          return quote(node.text);
        } else if constexpr (std::is_same_v<T, ParamRef> || std::is_same_v<T, WidgetRef>) {
          return node.name;
        } else {
          return format_call(*node);
        }
      },
      value.node);
}

std::string format_guard(const BoolExpr& expr) {
  return std::visit(
      [](const auto& node) -> std::string {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, bool>) {
          return node ? "true" : "false";
        } else if constexpr (std::is_same_v<T, OperationUse>) {
          return format_call(node);
        } else if constexpr (std::is_same_v<T, BoolAnd>) {
          return format_guard(*node.lhs) + " and " + format_operand(*node.rhs);
        } else if constexpr (std::is_same_v<T, BoolOr>) {
          return format_guard(*node.lhs) + " or " + format_operand(*node.rhs);
        } else {
          return "not " + format_operand(*node.operand);
        }
      },
      expr.node);
}

std::string format(const AppModel& model) {
  std::ostringstream os;
  os << "app " << quote(model.app_id) << "\n";
  for (const Resource& r : model.resources) {
    os << "\n";
    format_resource(os, r);
  }
  for (const Screen& s : model.screens) {
    os << "\n";
    format_screen(os, s);
  }
  if (!model.proxies.empty()) os << "\n";
  for (const ProxyScreen& p : model.proxies) format_proxy(os, p);
  return os.str();
}

}  // namespace storyboard
