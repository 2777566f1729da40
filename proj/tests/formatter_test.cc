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

#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "storyboard/formatter.h"
#include "storyboard/parser.h"
#include "support/random_model.h"

namespace storyboard {
namespace {

using testing::read_fixture;

std::vector<std::string> all_sbd_fixtures() {
  std::vector<std::string> out;
  const std::filesystem::path root(SBC_FIXTURE_DIR);
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.path().extension() != ".sbd") continue;
    out.push_back(std::filesystem::relative(entry.path(), root).generic_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(FormatterTest, RoundTripsEveryFixture) {
  int checked = 0;
  for (const std::string& name : all_sbd_fixtures()) {
    ParseOutcome first = parse(read_fixture(name), name);
    if (!first.ok()) continue;  // malformed.sbd
    const std::string text = format(*first.model);
    ParseOutcome second = parse(text, name);
    ASSERT_TRUE(second.ok()) << name << "\n" << text;
    EXPECT_EQ(*first.model, *second.model) << name;
    EXPECT_EQ(format(*second.model), text) << name;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

TEST(FormatterTest, EmptyScreen) {
  ParseOutcome r = parse("app \"a\" screen S { }", "s.sbd");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(format(*r.model), "app \"a\"\n\nscreen S {\n}\n");
}

TEST(FormatterTest, CanonicalLayout) {
  ParseOutcome r = parse(
      "app \"x\" resource R access own { priv capability C capability D }"
      " start screen A uri \"app://a/{p}\" { param p safe TextView T = p"
      " transition t1 order 1 dest B cond T.click and (f(safe T) or g()) { param q = safe h(p) use R.C } }"
      " screen B { param q WebView w = \"u\" [trust-patterns={\"a\", \"b\"}, allowJS=false] }"
      " proxy safe P app \"other\" uri \"ext://p\"",
      "s.sbd");
  ASSERT_TRUE(r.ok()) << r.errors[0].message;
  EXPECT_EQ(format(*r.model),
            "app \"x\"\n"
            "\n"
            "resource R access own {\n"
            "  priv capability C\n"
            "  capability D\n"
            "}\n"
            "\n"
            "start screen A uri \"app://a/{p}\" {\n"
            "  param p\n"
            "  safe TextView T = p\n"
            "  transition t1 order 1 dest B cond T.click and (f(safe T) or g()) {\n"
            "    param q = safe h(p) use R.C\n"
            "  }\n"
            "}\n"
            "\n"
            "screen B {\n"
            "  param q\n"
            "  WebView w = \"u\" [allowJS=false, trust-patterns={\"a\", \"b\"}]\n"
            "}\n"
            "\n"
            "proxy safe P app \"other\" uri \"ext://p\"\n");
}

TEST(FormatterTest, GuardParentheses) {
  BoolExpr a{OperationUse{"a", {}, {}, {}, {}}};
  BoolExpr b{OperationUse{"b", {}, {}, {}, {}}};
  BoolExpr c{OperationUse{"c", {}, {}, {}, {}}};
  EXPECT_EQ(format_guard(make_and(make_or(a, b), c)), "a() or b() and c()");
  EXPECT_EQ(format_guard(make_and(a, make_or(b, c))), "a() and (b() or c())");
  EXPECT_EQ(format_guard(make_not(make_and(a, b))), "not (a() and b())");
  EXPECT_EQ(format_guard(make_not(BoolExpr{false})), "not false");
}

TEST(FormatterTest, QuoteEscapes) {
  EXPECT_EQ(quote("a\"b\\c"), "\"a\\\"b\\\\c\"");
  ParseOutcome r = parse("app " + quote("we\"ird\\") + " screen S { }", "s.sbd");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.model->app_id, "we\"ird\\");
}

TEST(FormatterTest, Idempotent) {
  for (const std::string& name : all_sbd_fixtures()) {
    ParseOutcome r = parse(read_fixture(name), name);
    if (!r.ok()) continue;
    const std::string once = format(*r.model);
    EXPECT_EQ(format(*parse(once, name).model), once) << name;
  }
}

}  // namespace
}  // namespace storyboard
