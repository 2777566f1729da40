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

#include "storyboard/model.h"

#include <algorithm>
#include <array>
#include <utility>

namespace storyboard {
namespace {

constexpr std::array<std::pair<WidgetKind, std::string_view>, 4> kWidgetKinds = {{
    {WidgetKind::kTextView, "TextView"},
    {WidgetKind::kEditText, "EditText"},
    {WidgetKind::kButton, "Button"},
    {WidgetKind::kWebView, "WebView"},
}};

constexpr std::array<std::pair<Gesture, std::string_view>, 3> kGestures = {{
    {Gesture::kClick, "click"},
    {Gesture::kSwipe, "swipe"},
    {Gesture::kDrag, "drag"},
}};

constexpr std::array<std::pair<Access, std::string_view>, 3> kAccessLevels = {{
    {Access::kAll, "all"},
    {Access::kUser, "user"},
    {Access::kOwn, "own"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const std::array<std::pair<E, std::string_view>, N>& table,
                          std::string_view text) {
  for (const auto& [e, name] : table) {
    if (name == text) return e;
  }
  return std::nullopt;
}

void visit_op(const OperationUse& use, std::string_view screen, OpPosition position,
              const OperationUse* parent, int arg_index,
              const std::function<void(const OpSite&)>& fn) {
  fn(OpSite{&use, screen, position, parent, arg_index});
  for (std::size_t i = 0; i < use.args.size(); ++i) {
    if (const OperationUse* nested = use.args[i].value.op()) {
      visit_op(*nested, screen, OpPosition::kValue, &use, static_cast<int>(i), fn);
    }
  }
}

void visit_value(const ValueBinding& value, std::string_view screen,
                 const std::function<void(const OpSite&)>& fn) {
  if (const OperationUse* use = value.op()) visit_op(*use, screen, OpPosition::kValue, nullptr, -1, fn);
}

void visit_guard(const BoolExpr& expr, std::string_view screen,
                 const std::function<void(const OpSite&)>& fn) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, OperationUse>) {
          visit_op(node, screen, OpPosition::kBoolean, nullptr, -1, fn);
        } else if constexpr (std::is_same_v<T, BoolAnd> || std::is_same_v<T, BoolOr>) {
          visit_guard(*node.lhs, screen, fn);
          visit_guard(*node.rhs, screen, fn);
        } else if constexpr (std::is_same_v<T, BoolNot>) {
          visit_guard(*node.operand, screen, fn);
        }
      },
      expr.node);
}

}  // namespace

std::string_view to_string(WidgetKind kind) { return name_of(kWidgetKinds, kind); }
std::string_view to_string(Gesture gesture) { return name_of(kGestures, gesture); }
std::string_view to_string(Access access) { return name_of(kAccessLevels, access); }
std::optional<WidgetKind> widget_kind_from(std::string_view text) { return value_of(kWidgetKinds, text); }
std::optional<Gesture> gesture_from(std::string_view text) { return value_of(kGestures, text); }
std::optional<Access> access_from(std::string_view text) { return value_of(kAccessLevels, text); }

const OperationUse* ValueBinding::op() const {
  if (const auto* boxed = std::get_if<Box<OperationUse>>(&node)) return &**boxed;
  return nullptr;
}

std::optional<std::string_view> ValueBinding::reference() const {
  if (const auto* p = std::get_if<ParamRef>(&node)) return p->name;
  if (const auto* w = std::get_if<WidgetRef>(&node)) return w->name;
  return std::nullopt;
}

bool OperationUse::attribute_true(std::string_view key) const {
  auto it = attributes.find(std::string(key));
  if (it == attributes.end()) return false;
  const bool* flag = std::get_if<bool>(&it->second);
  return flag != nullptr && *flag;
}

BoolExpr make_and(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr{BoolAnd{std::move(lhs), std::move(rhs)}};
}
BoolExpr make_or(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr{BoolOr{std::move(lhs), std::move(rhs)}};
}
BoolExpr make_not(BoolExpr operand) { return BoolExpr{BoolNot{std::move(operand)}}; }

Uri Uri::parse(std::string_view text) {
  Uri uri;
  uri.text = std::string(text);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t close = text.find('}', i);
      if (close == std::string_view::npos) {
        uri.base.append(text.substr(i));
        break;
      }
      uri.params.emplace_back(text.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      uri.base.push_back(text[i++]);
    }
  }
  return uri;
}

std::vector<std::string> Widget::trust_patterns() const {
  for (std::string_view key : {kTrustPatterns, kTrustPatternsAlias}) {
    auto it = attributes.find(std::string(key));
    if (it == attributes.end()) continue;
    if (const auto* list = std::get_if<std::vector<std::string>>(&it->second)) return *list;
    if (const auto* one = std::get_if<std::string>(&it->second)) return {*one};
  }
  return {};
}

const Widget* Screen::find_widget(std::string_view id) const {
  auto it = std::find_if(widgets.begin(), widgets.end(), [&](const Widget& w) { return w.id == id; });
  return it == widgets.end() ? nullptr : &*it;
}

bool Screen::has_param(std::string_view name) const {
  return std::find(params.begin(), params.end(), name) != params.end();
}

bool Screen::is_uri_param(std::string_view name) const {
  return std::any_of(uris.begin(), uris.end(), [&](const Uri& u) {
    return std::find(u.params.begin(), u.params.end(), name) != u.params.end();
  });
}

const Screen* AppModel::find_screen(std::string_view name) const {
  auto it = std::find_if(screens.begin(), screens.end(), [&](const Screen& s) { return s.name == name; });
  return it == screens.end() ? nullptr : &*it;
}

const ProxyScreen* AppModel::find_proxy(std::string_view name) const {
  auto it = std::find_if(proxies.begin(), proxies.end(),
                         [&](const ProxyScreen& p) { return p.name == name; });
  return it == proxies.end() ? nullptr : &*it;
}

const Resource* AppModel::find_resource(std::string_view name) const {
  auto it = std::find_if(resources.begin(), resources.end(),
                         [&](const Resource& r) { return r.name == name; });
  return it == resources.end() ? nullptr : &*it;
}

std::string start_screen(const AppModel& model) {
  if (model.screens.empty()) throw LookupError("model '" + model.app_id + "' has no screens");
  for (const Screen& s : model.screens) {
    if (s.start) return s.name;
  }
  return model.screens.front().name;
}

std::vector<Transition> out_transitions(const AppModel& model, std::string_view screen) {
  const Screen* s = model.find_screen(screen);
  if (s == nullptr) throw LookupError("unknown screen '" + std::string(screen) + "'");
  std::vector<Transition> out = s->transitions;
  std::stable_sort(out.begin(), out.end(),
                   [](const Transition& a, const Transition& b) { return a.order < b.order; });
  return out;
}

void for_each_operation(const AppModel& model, const std::function<void(const OpSite&)>& fn) {
  for (const Screen& screen : model.screens) {
    for (const Widget& w : screen.widgets) visit_value(w.value, screen.name, fn);
    for (const Transition& t : screen.transitions) {
      if (t.guard) visit_guard(*t.guard, screen.name, fn);
      for (const ParamBinding& b : t.bindings) visit_value(b.value, screen.name, fn);
    }
  }
}

}  // namespace storyboard
