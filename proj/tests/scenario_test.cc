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

#include "storyboard/scenario.h"
#include "support/random_model.h"

namespace storyboard {
namespace {

TEST(ScenarioTest, ParsesEveryCommand) {
  ScenarioOutcome r = parse_scenario(
      "# comment\n"
      "launch uri \"app://contacts/{y}\" y=\"0123\"\n"
      "click Add\n"
      "swipe List   # trailing comment\n"
      "drag Slider\n"
      "op savePhone -> true\n"
      "op savePhone -> false\n"
      "op getToken -> \"tok \\\"1\\\"\"\n"
      "env fragAddr=\"home\"\n",
      "s.scn");
  ASSERT_TRUE(r.ok()) << r.errors[0].message;
  const Scenario& s = *r.scenario;
  ASSERT_TRUE(s.via_uri.has_value());
  EXPECT_EQ(s.via_uri->uri, "app://contacts/{y}");
  EXPECT_EQ(s.via_uri->args.at("y"), "0123");
  EXPECT_EQ(s.gestures, (std::vector<UserAction>{{"Add", Gesture::kClick},
                                                 {"List", Gesture::kSwipe},
                                                 {"Slider", Gesture::kDrag}}));
  EXPECT_EQ(s.op_results.at("savePhone"), (std::vector<OpResult>{true, false}));
  EXPECT_EQ(s.op_results.at("getToken"), (std::vector<OpResult>{std::string("tok \"1\"")}));
  EXPECT_EQ(s.uri_env.at("fragAddr"), "home");
  EXPECT_FALSE(s.stop_after.has_value());
  EXPECT_FALSE(s.strict);
}

TEST(ScenarioTest, PlainLaunchAndStop) {
  ScenarioOutcome r = parse_scenario(testing::read_fixture("fig3_save.scn"), "fig3_save.scn");
  ASSERT_TRUE(r.ok());
  EXPECT_FALSE(r.scenario->via_uri.has_value());
  EXPECT_EQ(r.scenario->gestures.size(), 2u);
  EXPECT_EQ(r.scenario->stop_after, 2);

  r = parse_scenario("launch\nstop\n", "s.scn");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.scenario->stop_after, 0);
}

TEST(ScenarioTest, EmptyTextIsAnEmptyScenario) {
  ScenarioOutcome r = parse_scenario("", "s.scn");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.scenario, Scenario{});
}

TEST(ScenarioTest, ReportsEveryBadLine) {
  ScenarioOutcome r = parse_scenario(
      "launch\n"
      "launch\n"
      "tap Add\n"
      "op f -> maybe\n"
      "stop\n"
      "click Add\n"
      "env x=unquoted\n"
      "click \"Add\n",
      "bad.scn");
  ASSERT_FALSE(r.ok());
  std::vector<int> lines;
  for (const Diagnostic& d : r.errors) {
    EXPECT_EQ(d.code, "SC001");
    EXPECT_EQ(d.span->file, "bad.scn");
    lines.push_back(d.span->line);
  }
  EXPECT_EQ(lines, (std::vector<int>{2, 3, 4, 6, 7, 8}));
  EXPECT_EQ(r.errors[2].span->column, 9);
}

}  // namespace
}  // namespace storyboard
