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

#include "storyboard/parser.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "storyboard/lexer.h"

namespace storyboard {
namespace {

struct SyntaxError {
  Diagnostic diagnostic;
};

bool is_widget_attribute(std::string_view key) {
  return key == kTrustPatterns || key == kTrustPatternsAlias || key == kAllowJs;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::kEnd:
      return "end of input";
    case TokenKind::kString:
      return "string \"" + t.text + "\"";
    case TokenKind::kInt:
      return "number " + t.text;
    default:
      return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ParseOutcome run(std::vector<Diagnostic> lex_errors) {
    errors_ = std::move(lex_errors);
    AppModel model;
    try {
      expect_word("app");
      model.app_id = expect(TokenKind::kString, "app id string").text;
    } catch (const SyntaxError& e) {
      errors_.push_back(e.diagnostic);
      sync_top();
    }
    while (!peek().is(TokenKind::kEnd, "") && peek().kind != TokenKind::kEnd) {
      try {
        const Token& t = peek();
        if (t.is_word("resource")) {
          model.resources.push_back(parse_resource());
        } else if (t.is_word("screen") || t.is_word("start")) {
          model.screens.push_back(parse_screen());
        } else if (t.is_word("proxy")) {
          model.proxies.push_back(parse_proxy());
        } else {
          fail("SY002", "expected 'resource', 'screen' or 'proxy' but found " + describe(t), t);
        }
      } catch (const SyntaxError& e) {
        errors_.push_back(e.diagnostic);
        advance_if_stuck();
        sync_top();
      }
    }
    ParseOutcome out;
    if (errors_.empty()) {
      out.model = std::move(model);
    } else {
      // Lexer errors come first in errors_; report everything in source order.
      std::stable_sort(errors_.begin(), errors_.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::make_pair(a.span->line, a.span->column) < std::make_pair(b.span->line, b.span->column);
      });
      out.errors = std::move(errors_);
    }
    return out;
  }

 private:
  // --- token plumbing -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(std::string code, std::string message, const Token& at) {
    throw SyntaxError{make_error(std::move(code), std::move(message), at.span)};
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (peek().kind != kind) fail("SY002", "expected " + std::string(what) + " but found " + describe(peek()), peek());
    return next();
  }
  const Token& expect_word(std::string_view word) {
    if (!peek().is_word(word)) {
      fail("SY002", "expected '" + std::string(word) + "' but found " + describe(peek()), peek());
    }
    return next();
  }
  void expect_punct(char c) {
    if (!peek().is_punct(c)) {
      fail("SY002", std::string("expected '") + c + "' but found " + describe(peek()), peek());
    }
    next();
  }
  bool accept_punct(char c) {
    if (!peek().is_punct(c)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!peek().is_word(w)) return false;
    next();
    return true;
  }

  void advance_if_stuck() {
    if (pos_ == last_sync_pos_ && peek().kind != TokenKind::kEnd) next();
    last_sync_pos_ = pos_;
  }

  static bool starts_top_item(const Token& t) {
    return t.is_word("resource") || t.is_word("screen") || t.is_word("start") || t.is_word("proxy");
  }

  // Skips to the next top-level item at brace depth 0.
  void sync_top() {
    int depth = 0;
    while (peek().kind != TokenKind::kEnd) {
      const Token& t = peek();
      if (depth <= 0 && starts_top_item(t)) return;
      if (t.is_punct('{')) ++depth;
      if (t.is_punct('}')) --depth;
      next();
    }
  }

  static bool starts_body_item(const Token& t) {
    return t.is_word("param") || t.is_word("transition") || t.is_word("safe") ||
           (t.kind == TokenKind::kIdent && widget_kind_from(t.text).has_value());
  }

  // Skips to the next screen body item or the closing brace of the body.
  void sync_body() {
    int depth = 0;
    while (peek().kind != TokenKind::kEnd) {
      const Token& t = peek();
      if (depth == 0 && (starts_body_item(t) || t.is_punct('}'))) return;
      if (depth == 0 && (t.is_word("screen") || t.is_word("resource") || t.is_word("proxy"))) return;
      if (t.is_punct('{')) ++depth;
      if (t.is_punct('}')) --depth;
      next();
    }
  }

  // --- items ----------------------------------------------------------------

  Resource parse_resource() {
    expect_word("resource");
    Resource r;
    const Token& name = expect(TokenKind::kIdent, "resource name");
    r.name = name.text;
    r.origin.span = name.span;
    expect_word("access");
    const Token& level = expect(TokenKind::kIdent, "access level");
    auto access = access_from(level.text);
    if (!access) fail("SY005", "unknown access level '" + level.text + "' (expected all, user or own)", level);
    r.access = *access;
    expect_punct('{');
    do {
      Capability c;
      c.priv = accept_word("priv");
      expect_word("capability");
      c.name = expect(TokenKind::kIdent, "capability name").text;
      r.capabilities.push_back(std::move(c));
    } while (!peek().is_punct('}') && peek().kind != TokenKind::kEnd);
    expect_punct('}');
    return r;
  }

  ProxyScreen parse_proxy() {
    expect_word("proxy");
    ProxyScreen p;
    // In `proxy safe uri "..."` the word is the name.
    const bool keyword_follows =
        (peek(1).is_word("uri") || peek(1).is_word("app")) && peek(2).kind == TokenKind::kString;
    if (peek().is_word("safe") && peek(1).kind == TokenKind::kIdent && !keyword_follows) {
      next();
      p.safe = true;
    }
    const Token& name = expect(TokenKind::kIdent, "proxy screen name");
    p.name = name.text;
    p.origin.span = name.span;
    if (accept_word("app")) p.app_id = expect(TokenKind::kString, "app id string").text;
    expect_word("uri");
    p.uri = Uri::parse(expect(TokenKind::kString, "URI string").text);
    return p;
  }

  Screen parse_screen() {
    Screen s;
    s.start = accept_word("start");
    expect_word("screen");
    const Token& name = expect(TokenKind::kIdent, "screen name");
    s.name = name.text;
    s.origin.span = name.span;
    while (accept_word("uri")) s.uris.push_back(Uri::parse(expect(TokenKind::kString, "URI string").text));
    expect_punct('{');
    while (!peek().is_punct('}')) {
      if (peek().kind == TokenKind::kEnd) fail("SY002", "unterminated body of screen '" + s.name + "'", peek());
      try {
        parse_body_item(s);
      } catch (const SyntaxError& e) {
        errors_.push_back(e.diagnostic);
        advance_if_stuck();
        sync_body();
        if (!peek().is_punct('}') && !starts_body_item(peek())) {
          // Ran into the next top-level item: the body was never closed.
          resolve_references(s);
          return s;
        }
      }
    }
    expect_punct('}');
    resolve_references(s);
    return s;
  }

  void parse_body_item(Screen& s) {
    const Token& t = peek();
    if (t.is_word("param")) {
      next();
      s.params.push_back(expect(TokenKind::kIdent, "parameter name").text);
      return;
    }
    if (t.is_word("transition")) {
      s.transitions.push_back(parse_transition());
      return;
    }
    bool safe = false;
    if (t.is_word("safe")) {
      next();
      safe = true;
    }
    const Token& kind_tok = peek();
    if (kind_tok.kind != TokenKind::kIdent) {
      fail("SY002", "expected 'param', 'transition' or a widget declaration but found " + describe(kind_tok),
           kind_tok);
    }
    auto kind = widget_kind_from(kind_tok.text);
    if (!kind && kind_tok.is_word("widget") && peek(1).kind == TokenKind::kIdent &&
        peek(2).kind == TokenKind::kIdent) {
      // `widget Kind id = ...`: a common slip; report the kind itself.
      const Token& named = peek(1);
      if (widget_kind_from(named.text)) {
        fail("SY002", "unexpected 'widget'; declare widgets as `" + named.text + " id = value`", kind_tok);
      }
      fail("SY003", "unknown widget kind " + named.text + " (expected TextView, EditText, Button or WebView)",
           named);
    }
    if (!kind) {
      if (safe || (peek(1).kind == TokenKind::kIdent && peek(2).is_punct('='))) {
        fail("SY003", "unknown widget kind " + kind_tok.text + " (expected TextView, EditText, Button or WebView)",
             kind_tok);
      }
      fail("SY002", "expected 'param', 'transition' or a widget declaration but found " + describe(kind_tok),
           kind_tok);
    }
    next();
    Widget w;
    w.kind = *kind;
    w.safe = safe;
    const Token& id = expect(TokenKind::kIdent, "widget id");
    w.id = id.text;
    w.origin.span = id.span;
    expect_punct('=');
    w.value = parse_value();
    if (peek().is_punct('[')) w.attributes = parse_attrs();
    // A single attribute list after a call belongs to the call except for
    // widget-only attribute names.
    if (auto* boxed = std::get_if<Box<OperationUse>>(&w.value.node); boxed && w.attributes.empty()) {
      Attributes& op_attrs = (*boxed)->attributes;
      for (auto it = op_attrs.begin(); it != op_attrs.end();) {
        if (is_widget_attribute(it->first)) {
          w.attributes.insert(*it);
          it = op_attrs.erase(it);
        } else {
          ++it;
        }
      }
    }
    s.widgets.push_back(std::move(w));
  }

  Transition parse_transition() {
    expect_word("transition");
    Transition t;
    const Token& id = expect(TokenKind::kIdent, "transition id");
    t.id = id.text;
    t.origin.span = id.span;
    expect_word("order");
    const Token& order = expect(TokenKind::kInt, "order index");
    try {
      t.order = std::stoi(order.text);
    } catch (const std::out_of_range&) {
      fail("SY002", "order index " + order.text + " is out of range", order);
    }
    expect_word("dest");
    t.dest = expect(TokenKind::kIdent, "destination screen").text;
    if (accept_word("cond")) {
      if (peek().kind == TokenKind::kIdent && peek(1).is_punct('.')) {
        UserAction ua;
        ua.widget = next().text;
        next();  // '.'
        const Token& g = expect(TokenKind::kIdent, "gesture");
        auto gesture = gesture_from(g.text);
        if (!gesture) fail("SY004", "unknown gesture '" + g.text + "' (expected click, swipe or drag)", g);
        ua.gesture = *gesture;
        t.user_action = ua;
        if (accept_word("and")) t.guard = parse_bexpr();
      } else {
        t.guard = parse_bexpr();
      }
    }
    if (accept_punct('{')) {
      while (!accept_punct('}')) {
        expect_word("param");
        ParamBinding b;
        const Token& target = expect(TokenKind::kIdent, "parameter name");
        b.target = target.text;
        b.origin.span = target.span;
        expect_punct('=');
        b.safe = accept_safe_marker();
        b.value = parse_value();
        t.bindings.push_back(std::move(b));
      }
    }
    return t;
  }

  // `safe` is a marker only when a value follows; otherwise it is a name.
  bool accept_safe_marker() {
    if (peek().is_word("safe") &&
        (peek(1).kind == TokenKind::kIdent || peek(1).kind == TokenKind::kString)) {
      next();
      return true;
    }
    return false;
  }

  ValueBinding parse_value() {
    const Token& t = peek();
    if (t.kind == TokenKind::kString) {
      return ValueBinding{Literal{next().text}};
    }
    if (t.kind == TokenKind::kIdent) {
      if (peek(1).is_punct('(')) return ValueBinding{Box<OperationUse>(parse_call())};
      return ValueBinding{ParamRef{next().text}};
    }
    fail("SY002", "expected a string, identifier or operation call but found " + describe(t), t);
  }

  OperationUse parse_call() {
    OperationUse use;
    const Token& name = expect(TokenKind::kIdent, "operation name");
    use.name = name.text;
    use.origin.span = name.span;
    expect_punct('(');
    if (!accept_punct(')')) {
      do {
        Arg a;
        a.safe = accept_safe_marker();
        a.value = parse_value();
        use.args.push_back(std::move(a));
      } while (accept_punct(','));
      expect_punct(')');
    }
    if (accept_word("use")) {
      CapabilityRef cap;
      cap.resource = expect(TokenKind::kIdent, "resource name").text;
      expect_punct('.');
      cap.capability = expect(TokenKind::kIdent, "capability name").text;
      use.capability = std::move(cap);
    }
    if (peek().is_punct('[')) use.attributes = parse_attrs();
    return use;
  }

  Attributes parse_attrs() {
    expect_punct('[');
    Attributes attrs;
    do {
      const Token& key = expect(TokenKind::kIdent, "attribute name");
      expect_punct('=');
      AttrValue value;
      if (peek().kind == TokenKind::kString) {
        value = next().text;
      } else if (accept_word("true")) {
        value = true;
      } else if (accept_word("false")) {
        value = false;
      } else if (accept_punct('{')) {
        std::vector<std::string> items;
        items.push_back(expect(TokenKind::kString, "pattern string").text);
        while (accept_punct(',')) items.push_back(expect(TokenKind::kString, "pattern string").text);
        expect_punct('}');
        value = std::move(items);
      } else {
        fail("SY002", "expected an attribute value but found " + describe(peek()), peek());
      }
      if (!attrs.emplace(key.text, std::move(value)).second) {
        fail("SY006", "attribute '" + key.text + "' given twice", key);
      }
    } while (accept_punct(','));
    expect_punct(']');
    return attrs;
  }

  BoolExpr parse_bexpr() {
    BoolExpr lhs = parse_bterm();
    while (true) {
      if (accept_word("and")) {
        lhs = make_and(std::move(lhs), parse_bterm());
      } else if (accept_word("or")) {
        lhs = make_or(std::move(lhs), parse_bterm());
      } else {
        return lhs;
      }
    }
  }

  BoolExpr parse_bterm() {
    if (accept_word("not")) return make_not(parse_bterm());
    if (accept_punct('(')) {
      BoolExpr inner = parse_bexpr();
      expect_punct(')');
      return inner;
    }
    if (peek().is_word("true") && !peek(1).is_punct('(')) {
      next();
      return BoolExpr{true};
    }
    if (peek().is_word("false") && !peek(1).is_punct('(')) {
      next();
      return BoolExpr{false};
    }
    if (peek().kind == TokenKind::kIdent && peek(1).is_punct('(')) return BoolExpr{parse_call()};
    fail("SY002", "expected a boolean operation, 'not', '(' , 'true' or 'false' but found " + describe(peek()),
         peek());
  }

  // --- reference resolution -------------------------------------------------

  // Bare identifiers parse as param references; the ones naming a widget of
  // the same screen (and no param) become widget references.
  void resolve_references(Screen& s) {
    std::set<std::string> params(s.params.begin(), s.params.end());
    std::set<std::string> widgets;
    for (const Widget& w : s.widgets) widgets.insert(w.id);
    auto fix_value = [&](auto&& self, ValueBinding& v) -> void {
      if (auto* p = std::get_if<ParamRef>(&v.node)) {
        if (!params.count(p->name) && widgets.count(p->name)) v.node = WidgetRef{p->name};
      } else if (auto* boxed = std::get_if<Box<OperationUse>>(&v.node)) {
        for (Arg& a : (*boxed)->args) self(self, a.value);
      }
    };
    auto fix_call = [&](OperationUse& use) {
      for (Arg& a : use.args) fix_value(fix_value, a.value);
    };
    auto fix_guard = [&](auto&& self, BoolExpr& e) -> void {
      if (auto* op = std::get_if<OperationUse>(&e.node)) {
        fix_call(*op);
      } else if (auto* a = std::get_if<BoolAnd>(&e.node)) {
        self(self, *a->lhs);
        self(self, *a->rhs);
      } else if (auto* o = std::get_if<BoolOr>(&e.node)) {
        self(self, *o->lhs);
        self(self, *o->rhs);
      } else if (auto* n = std::get_if<BoolNot>(&e.node)) {
        self(self, *n->operand);
      }
    };
    for (Widget& w : s.widgets) fix_value(fix_value, w.value);
    for (Transition& t : s.transitions) {
      if (t.guard) fix_guard(fix_guard, *t.guard);
      for (ParamBinding& b : t.bindings) fix_value(fix_value, b.value);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_sync_pos_ = static_cast<std::size_t>(-1);
  std::vector<Diagnostic> errors_;
};

}  // namespace

ParseOutcome parse(std::string_view text, std::string_view file) {
  LexResult lexed = lex(text, file);
  return Parser(std::move(lexed.tokens)).run(std::move(lexed.errors));
}

}  // namespace storyboard
