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

#ifndef STORYBOARD_MODEL_H_
#define STORYBOARD_MODEL_H_

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "storyboard/box.h"
#include "storyboard/diagnostic.h"

namespace storyboard {

// Where a model node came from. Never participates in structural equality:
// two models parsed from differently laid out text compare equal.
struct Origin {
  std::optional<SourceSpan> span;

  friend bool operator==(const Origin&, const Origin&) { return true; }
};

enum class WidgetKind { kTextView, kEditText, kButton, kWebView };
enum class Gesture { kClick, kSwipe, kDrag };
enum class Access { kAll, kUser, kOwn };

std::string_view to_string(WidgetKind kind);
std::string_view to_string(Gesture gesture);
std::string_view to_string(Access access);
std::optional<WidgetKind> widget_kind_from(std::string_view text);
std::optional<Gesture> gesture_from(std::string_view text);
std::optional<Access> access_from(std::string_view text);

// Attribute values: a string, a boolean, or a set of pattern strings.
using AttrValue = std::variant<std::string, bool, std::vector<std::string>>;
using Attributes = std::map<std::string, AttrValue>;

inline constexpr std::string_view kTrustPatterns = "trust-patterns";
inline constexpr std::string_view kTrustPatternsAlias = "trusted-patterns";
inline constexpr std::string_view kAllowJs = "allowJS";
inline constexpr std::string_view kDisableCertPin = "disableCertPin";

struct OperationUse;

struct Literal {
  std::string text;
  friend bool operator==(const Literal&, const Literal&) = default;
};
struct ParamRef {
  std::string name;
  friend bool operator==(const ParamRef&, const ParamRef&) = default;
};
struct WidgetRef {
  std::string name;
  friend bool operator==(const WidgetRef&, const WidgetRef&) = default;
};

struct ValueBinding {
  std::variant<Literal, ParamRef, WidgetRef, Box<OperationUse>> node;

  bool is_literal() const { return std::holds_alternative<Literal>(node); }
  const OperationUse* op() const;
  // Name of the referenced param or widget, if this is a reference.
  std::optional<std::string_view> reference() const;

  friend bool operator==(const ValueBinding&, const ValueBinding&) = default;
};

struct Arg {
  bool safe = false;
  ValueBinding value;
  friend bool operator==(const Arg&, const Arg&) = default;
};

struct CapabilityRef {
  std::string resource;
  std::string capability;
  friend auto operator<=>(const CapabilityRef&, const CapabilityRef&) = default;
  friend bool operator==(const CapabilityRef&, const CapabilityRef&) = default;
};

struct OperationUse {
  std::string name;
  std::optional<CapabilityRef> capability;
  std::vector<Arg> args;
  Attributes attributes;
  Origin origin;

  bool attribute_true(std::string_view key) const;
  friend bool operator==(const OperationUse&, const OperationUse&) = default;
};

struct BoolExpr;
struct BoolAnd {
  Box<BoolExpr> lhs;
  Box<BoolExpr> rhs;
  friend bool operator==(const BoolAnd&, const BoolAnd&) = default;
};
struct BoolOr {
  Box<BoolExpr> lhs;
  Box<BoolExpr> rhs;
  friend bool operator==(const BoolOr&, const BoolOr&) = default;
};
struct BoolNot {
  Box<BoolExpr> operand;
  friend bool operator==(const BoolNot&, const BoolNot&) = default;
};

struct BoolExpr {
  std::variant<bool, OperationUse, BoolAnd, BoolOr, BoolNot> node;
  friend bool operator==(const BoolExpr&, const BoolExpr&) = default;
};

BoolExpr make_and(BoolExpr lhs, BoolExpr rhs);
BoolExpr make_or(BoolExpr lhs, BoolExpr rhs);
BoolExpr make_not(BoolExpr operand);

struct Uri {
  std::string text;                 // as written, e.g. "app://contacts/{y}"
  std::string base;                 // text with the {param} segments removed
  std::vector<std::string> params;  // in order of appearance

  static Uri parse(std::string_view text);
  friend bool operator==(const Uri&, const Uri&) = default;
};

struct Widget {
  WidgetKind kind = WidgetKind::kTextView;
  std::string id;
  ValueBinding value;
  bool safe = false;
  Attributes attributes;
  Origin origin;

  std::vector<std::string> trust_patterns() const;
  friend bool operator==(const Widget&, const Widget&) = default;
};

struct UserAction {
  std::string widget;
  Gesture gesture = Gesture::kClick;
  friend bool operator==(const UserAction&, const UserAction&) = default;
};

struct ParamBinding {
  std::string target;
  bool safe = false;
  ValueBinding value;
  Origin origin;
  friend bool operator==(const ParamBinding&, const ParamBinding&) = default;
};

struct Transition {
  std::string id;
  int order = 1;
  std::string dest;
  std::optional<UserAction> user_action;
  std::optional<BoolExpr> guard;
  std::vector<ParamBinding> bindings;
  Origin origin;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Screen {
  std::string name;
  bool start = false;  // explicit `start` marker
  std::vector<Uri> uris;
  std::vector<std::string> params;
  std::vector<Widget> widgets;
  std::vector<Transition> transitions;
  Origin origin;

  const Widget* find_widget(std::string_view id) const;
  bool has_param(std::string_view name) const;
  bool is_uri_param(std::string_view name) const;
  friend bool operator==(const Screen&, const Screen&) = default;
};

struct ProxyScreen {
  std::string name;
  Uri uri;
  std::optional<std::string> app_id;
  bool safe = false;
  Origin origin;

  // Parameters of a proxy screen are the parameters of its URI.
  const std::vector<std::string>& params() const { return uri.params; }
  friend bool operator==(const ProxyScreen&, const ProxyScreen&) = default;
};

struct Capability {
  std::string name;
  bool priv = false;
  friend bool operator==(const Capability&, const Capability&) = default;
};

struct Resource {
  std::string name;
  Access access = Access::kAll;
  std::vector<Capability> capabilities;
  Origin origin;
  friend bool operator==(const Resource&, const Resource&) = default;
};

struct AppModel {
  std::string app_id;
  std::vector<Screen> screens;
  std::vector<ProxyScreen> proxies;
  std::vector<Resource> resources;

  const Screen* find_screen(std::string_view name) const;
  const ProxyScreen* find_proxy(std::string_view name) const;
  const Resource* find_resource(std::string_view name) const;
  friend bool operator==(const AppModel&, const AppModel&) = default;
};

class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Screen the user sees on launch: the one marked `start`, else the first
// declared screen. Throws LookupError on a model with no screens.
std::string start_screen(const AppModel& model);

// Outgoing transitions of `screen`, ascending by order index. Throws
// LookupError for an unknown screen.
std::vector<Transition> out_transitions(const AppModel& model, std::string_view screen);

// Syntactic position of an operation use.
enum class OpPosition { kValue, kBoolean };

// One syntactic occurrence of an operation in the model. `screen` is the
// screen whose identifiers the arguments refer to.
struct OpSite {
  const OperationUse* use = nullptr;
  std::string_view screen;
  OpPosition position = OpPosition::kValue;
  const OperationUse* parent = nullptr;  // enclosing call for nested arguments
  int arg_index = -1;                    // position within parent
};

// Visits every operation use in declaration order: screens in order; within a
// screen widgets then transitions (guard before bindings); outer calls before
// their nested arguments.
void for_each_operation(const AppModel& model, const std::function<void(const OpSite&)>& fn);

}  // namespace storyboard

#endif  // STORYBOARD_MODEL_H_
