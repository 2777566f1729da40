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

#include "storyboard/validate.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "storyboard/catalog.h"

namespace storyboard {
namespace {

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

class Validator {
 public:
  explicit Validator(const AppModel& model) : model_(model) {}

  std::vector<Diagnostic> run() {
    check_app();
    check_names();
    check_resources();
    check_uris();
    for (const Screen& screen : model_.screens) check_screen(screen);
    for (const ProxyScreen& proxy : model_.proxies) check_proxy(proxy);
    check_operations();
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string message, const Origin& origin) {
    out_.push_back(make_error(std::move(code), std::move(message), origin.span));
  }

  void check_app() {
    if (model_.app_id.empty()) error("WF015", "app id must be nonempty", Origin{});
    if (model_.screens.empty()) {
      error("WF002", "storyboard declares no screens; start screen is undefined", Origin{});
    }
    std::vector<std::string> marked;
    for (const Screen& s : model_.screens) {
      if (s.start) marked.push_back(s.name);
    }
    if (marked.size() > 1) {
      error("WF002", "more than one screen marked start: " + join(marked), Origin{});
    }
  }

  void check_names() {
    std::set<std::string> seen;
    auto note = [&](const std::string& name, const Origin& origin) {
      if (name.empty()) {
        error("WF015", "screen name must be nonempty", origin);
      } else if (!seen.insert(name).second) {
        error("WF001", "duplicate screen name " + quote(name), origin);
      }
    };
    for (const Screen& s : model_.screens) note(s.name, s.origin);
    for (const ProxyScreen& p : model_.proxies) note(p.name, p.origin);
  }

  void check_resources() {
    std::set<std::string> names;
    for (const Resource& r : model_.resources) {
      if (!names.insert(r.name).second) {
        error("WF003", "duplicate resource name " + quote(r.name), r.origin);
      }
      if (is_builtin_resource(r.name)) {
        error("WF003", "custom resource " + quote(r.name) + " shadows a builtin resource", r.origin);
      }
      if (r.capabilities.empty()) {
        error("WF003", "resource " + quote(r.name) + " offers no capability", r.origin);
      }
      std::set<std::string> caps;
      for (const Capability& c : r.capabilities) {
        if (!caps.insert(c.name).second) {
          error("WF003", "duplicate capability " + quote(c.name) + " in resource " + quote(r.name),
                r.origin);
        }
      }
    }
  }

  void check_uris() {
    std::map<std::string, std::string> owner_of_base;
    for (const Screen& s : model_.screens) {
      for (const Uri& u : s.uris) {
        auto [it, inserted] = owner_of_base.emplace(u.base, s.name);
        if (!inserted) {
          error("WF004",
                "URI " + quote(u.text) + " of screen " + quote(s.name) +
                    " duplicates a URI of screen " + quote(it->second) + " (parameters ignored)",
                s.origin);
        }
      }
    }
  }

  void check_uri_params(const Uri& uri, const std::string& owner, const Origin& origin) {
    std::set<std::string> seen;
    for (const std::string& p : uri.params) {
      if (p.empty()) error("WF015", "empty parameter segment in URI " + quote(uri.text), origin);
      if (!seen.insert(p).second) {
        error("WF005", "URI " + quote(uri.text) + " of " + quote(owner) + " repeats parameter " +
                           quote(p), origin);
      }
    }
  }

  void check_screen(const Screen& screen) {
    // Identifiers: widgets and params share one namespace per screen.
    std::set<std::string> ids;
    for (const std::string& p : screen.params) {
      if (p.empty()) error("WF015", "empty parameter name in screen " + quote(screen.name), screen.origin);
      if (!ids.insert(p).second) {
        error("WF006", "duplicate parameter " + quote(p) + " in screen " + quote(screen.name),
              screen.origin);
      }
    }
    for (const Widget& w : screen.widgets) {
      if (w.id.empty()) error("WF015", "empty widget id in screen " + quote(screen.name), w.origin);
      if (!ids.insert(w.id).second) {
        error("WF006", "identifier " + quote(w.id) + " declared twice in screen " + quote(screen.name),
              w.origin);
      }
    }

    // URIs.
    if (!screen.uris.empty()) {
      std::set<std::string> first(screen.uris.front().params.begin(), screen.uris.front().params.end());
      for (const Uri& u : screen.uris) {
        check_uri_params(u, screen.name, screen.origin);
        std::set<std::string> these(u.params.begin(), u.params.end());
        if (these != first) {
          error("WF005", "URIs of screen " + quote(screen.name) +
                             " must carry identical parameter sets; " + quote(u.text) + " differs",
                screen.origin);
        }
        for (const std::string& p : u.params) {
          if (!p.empty() && !screen.has_param(p)) {
            error("WF013", "URI parameter " + quote(p) + " of screen " + quote(screen.name) +
                               " is not declared with `param`", screen.origin);
          }
        }
      }
    }

    for (const Widget& w : screen.widgets) check_widget(screen, w);

    // Transition order indices: exactly 1..n.
    std::vector<int> orders;
    std::set<std::string> tids;
    for (const Transition& t : screen.transitions) {
      orders.push_back(t.order);
      if (t.id.empty()) error("WF015", "empty transition id in screen " + quote(screen.name), t.origin);
      if (!tids.insert(t.id).second) {
        error("WF014", "duplicate transition id " + quote(t.id) + " in screen " + quote(screen.name),
              t.origin);
      }
    }
    std::sort(orders.begin(), orders.end());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] != static_cast<int>(i) + 1) {
        error("WF007", "transitions of screen " + quote(screen.name) +
                           ": order indices must be 1..n with no gaps or duplicates",
              screen.transitions.empty() ? screen.origin : screen.transitions.front().origin);
        break;
      }
    }

    for (const Transition& t : screen.transitions) check_transition(screen, t);
  }

  void check_attributes_widget(const Screen& screen, const Widget& w) {
    for (const auto& [key, value] : w.attributes) {
      std::string where = "widget " + quote(w.id) + " of screen " + quote(screen.name);
      if (key == kTrustPatterns || key == kTrustPatternsAlias) {
        if (w.kind != WidgetKind::kWebView) {
          error("WF011", "attribute " + quote(key) + " is only legal on WebView (" + where + ")", w.origin);
        } else if (std::holds_alternative<bool>(value)) {
          error("WF011", "attribute " + quote(key) + " expects a pattern list (" + where + ")", w.origin);
        }
      } else if (key == kAllowJs) {
        if (w.kind != WidgetKind::kWebView) {
          error("WF011", "attribute 'allowJS' is only legal on WebView (" + where + ")", w.origin);
        } else if (!std::holds_alternative<bool>(value)) {
          error("WF011", "attribute 'allowJS' expects true or false (" + where + ")", w.origin);
        }
      } else {
        error("WF011", "unknown widget attribute " + quote(key) + " (" + where + ")", w.origin);
      }
    }
    if (w.attributes.count(std::string(kTrustPatterns)) && w.attributes.count(std::string(kTrustPatternsAlias))) {
      error("WF011", "both 'trust-patterns' and its alias 'trusted-patterns' set on " + quote(w.id), w.origin);
    }
  }

  void check_widget(const Screen& screen, const Widget& w) {
    check_attributes_widget(screen, w);
    if (const auto* ref = std::get_if<WidgetRef>(&w.value.node)) {
      error("WF012", "widget " + quote(w.id) + " takes its value from widget " + quote(ref->name) +
                         "; a widget value must be a literal, param or operation",
            w.origin);
      return;
    }
    check_value(screen, w.value, w.origin);
  }

  // Checks references inside a value or argument evaluated in `screen`.
  void check_value(const Screen& screen, const ValueBinding& value, const Origin& origin) {
    if (const auto* p = std::get_if<ParamRef>(&value.node)) {
      if (!screen.has_param(p->name)) {
        error("WF010", "unknown identifier " + quote(p->name) + " in screen " + quote(screen.name), origin);
      }
    } else if (const auto* w = std::get_if<WidgetRef>(&value.node)) {
      if (screen.find_widget(w->name) == nullptr) {
        error("WF010", "unknown widget " + quote(w->name) + " in screen " + quote(screen.name), origin);
      }
    } else if (const OperationUse* use = value.op()) {
      check_call(screen, *use);
    }
  }

  void check_call(const Screen& screen, const OperationUse& use) {
    if (use.name.empty()) error("WF015", "empty operation name", use.origin);
    if (use.capability) {
      switch (resolve_capability(model_, *use.capability)) {
        case CapabilityResolution::kUnknownBuiltin:
          error("WF010", "builtin resource " + quote(use.capability->resource) + " offers no capability " +
                             quote(use.capability->capability), use.origin);
          break;
        case CapabilityResolution::kUnknownCustom:
          error("WF010", "resource " + quote(use.capability->resource) + " offers no capability " +
                             quote(use.capability->capability), use.origin);
          break;
        default:
          break;
      }
    }
    for (const auto& [key, value] : use.attributes) {
      if (key == kDisableCertPin) {
        if (!std::holds_alternative<bool>(value)) {
          error("WF011", "attribute 'disableCertPin' expects true or false on " + quote(use.name), use.origin);
        }
      } else {
        error("WF011", "unknown operation attribute " + quote(key) + " on " + quote(use.name), use.origin);
      }
    }
    for (const Arg& a : use.args) check_value(screen, a.value, use.origin);
  }

  void check_guard(const Screen& screen, const BoolExpr& expr) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, OperationUse>) {
            check_call(screen, node);
          } else if constexpr (std::is_same_v<T, BoolAnd> || std::is_same_v<T, BoolOr>) {
            check_guard(screen, *node.lhs);
            check_guard(screen, *node.rhs);
          } else if constexpr (std::is_same_v<T, BoolNot>) {
            check_guard(screen, *node.operand);
          }
        },
        expr.node);
  }

  void check_transition(const Screen& screen, const Transition& t) {
    std::string where = "transition " + quote(t.id) + " of screen " + quote(screen.name);
    if (t.order < 1) error("WF007", where + ": order index must be positive", t.origin);

    const std::vector<std::string>* dest_params = nullptr;
    if (const Screen* d = model_.find_screen(t.dest)) {
      dest_params = &d->params;
    } else if (const ProxyScreen* p = model_.find_proxy(t.dest)) {
      dest_params = &p->params();
    } else {
      error("WF010", where + ": unknown destination screen " + quote(t.dest), t.origin);
    }

    if (t.user_action && screen.find_widget(t.user_action->widget) == nullptr) {
      error("WF010", where + ": user action names unknown widget " + quote(t.user_action->widget), t.origin);
    }
    if (t.guard) check_guard(screen, *t.guard);

    std::set<std::string> bound;
    for (const ParamBinding& b : t.bindings) {
      if (!bound.insert(b.target).second) {
        error("WF008", where + ": parameter " + quote(b.target) + " bound twice", b.origin);
      }
      if (dest_params != nullptr &&
          std::find(dest_params->begin(), dest_params->end(), b.target) == dest_params->end()) {
        error("WF008", where + ": destination " + quote(t.dest) + " has no parameter " + quote(b.target),
              b.origin);
      }
      check_value(screen, b.value, b.origin);
    }
    if (dest_params != nullptr) {
      for (const std::string& p : *dest_params) {
        if (!bound.count(p)) {
          error("WF008", where + ": missing binding for " + quote(p) + " of destination " + quote(t.dest),
                t.origin);
        }
      }
    }
  }

  void check_proxy(const ProxyScreen& proxy) {
    if (proxy.uri.text.empty()) error("WF015", "proxy " + quote(proxy.name) + " needs a URI", proxy.origin);
    check_uri_params(proxy.uri, proxy.name, proxy.origin);
    if (proxy.app_id && proxy.app_id->empty()) {
      error("WF015", "proxy " + quote(proxy.name) + " has an empty app id", proxy.origin);
    }
  }

  void check_operations() {
    struct FirstUse {
      std::size_t arity;
      OpPosition position;
    };
    std::map<std::string, FirstUse> first;
    for_each_operation(model_, [&](const OpSite& site) {
      const OperationUse& use = *site.use;
      auto [it, inserted] = first.emplace(use.name, FirstUse{use.args.size(), site.position});
      if (inserted) return;
      if (it->second.arity != use.args.size()) {
        error("WF009", "operation " + quote(use.name) + " used with " + std::to_string(use.args.size()) +
                           " argument(s) but earlier with " + std::to_string(it->second.arity),
              use.origin);
      }
      if (it->second.position != site.position) {
        error("WF009", "operation " + quote(use.name) + " is used in both boolean and non-boolean positions",
              use.origin);
      }
    });
  }

  const AppModel& model_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const AppModel& model) { return Validator(model).run(); }

}  // namespace storyboard
