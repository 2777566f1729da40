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

#include "storyboard/infoflow.h"
#include "storyboard/parser.h"
#include "support/random_model.h"

namespace storyboard {
namespace {

using testing::load_fixture;

QualifiedId id(std::string_view base, std::string_view owner) { return qualify(base, owner); }
QualifiedId op(std::string_view name) { return QualifiedId::operation(std::string(name)); }

AppModel parse_ok(std::string_view text) {
  ParseOutcome r = parse(text, "inline.sbd");
  if (!r.ok()) throw std::runtime_error(r.errors[0].code + " " + r.errors[0].message);
  return std::move(*r.model);
}

TEST(InfluenceTest, Fig3DirectEdges) {
  InfluenceGraph g = build_influences(load_fixture("fig3.sbd"));
  const std::set<Edge> expected = {
      {id("y", "Contacts"), id("Phone", "Contacts")},
      {id("Phone", "Contacts"), id("z", "PhoneApp")},
      {id("Phone", "Contacts"), id("x", "SaveStatus")},
      {op("dispMsg"), id("Status", "SaveStatus")},
      {id("x", "SaveStatus"), op("dispMsg")},
      {id("Phone", "Contacts"), op("savePhone")},
      {op("getContacts"), op("sendMsg")},
  };
  EXPECT_EQ(g.edges, expected);
  EXPECT_TRUE(g.nodes.count(id("Add", "Messenger")));
  EXPECT_TRUE(g.nodes.count(id("Status", "MsgStatus")));
  EXPECT_NE(id("Status", "MsgStatus"), id("Status", "SaveStatus"));
  ASSERT_EQ(g.edge_origin.at({id("y", "Contacts"), id("Phone", "Contacts")}).size(), 1u);
  EXPECT_EQ(g.edge_origin.at({id("y", "Contacts"), id("Phone", "Contacts")})[0].kind,
            EdgeSite::Kind::kWidgetValue);
}

TEST(InfluenceTest, LiteralsInduceNoEdge) {
  AppModel m = parse_ok("app \"a\" screen S { param p TextView T = f(\"k\") transition t order 1 dest S { param p = \"v\" } }");
  EXPECT_EQ(build_influences(m).edges, (std::set<Edge>{{op("f"), id("T", "S")}}));
}

TEST(InfluenceTest, GuardArgumentsFeedTheirOperation) {
  AppModel m = parse_ok(
      "app \"a\" screen S { EditText E = \"\" transition t order 1 dest S cond not (f(E) and g(h(E))) }");
  EXPECT_EQ(build_influences(m).edges, (std::set<Edge>{{id("E", "S"), op("f")},
                                                       {id("E", "S"), op("h")},
                                                       {op("h"), op("g")}}));
}

TEST(ClosureTest, Fig3Pairs) {
  ClosureRelation rel = closure(build_influences(load_fixture("fig3.sbd")));
  const QualifiedId y = id("y", "Contacts");
  EXPECT_TRUE(rel.contains(y, id("z", "PhoneApp")));
  EXPECT_TRUE(rel.contains(y, id("x", "SaveStatus")));
  EXPECT_TRUE(rel.contains(y, op("dispMsg")));
  EXPECT_TRUE(rel.contains(y, id("Status", "SaveStatus")));
  EXPECT_TRUE(rel.contains(id("x", "SaveStatus"), id("Status", "SaveStatus")));
  EXPECT_TRUE(rel.contains(id("Phone", "Contacts"), op("dispMsg")));
  EXPECT_FALSE(rel.contains(id("Status", "SaveStatus"), y));
  EXPECT_FALSE(rel.contains(y, id("Status", "MsgStatus")));
  EXPECT_TRUE(rel.contains(y, y));
}

TEST(ClosureTest, MatchesOracle) {
  AppModel m = load_fixture("fig4.sbd");
  InfluenceGraph g = build_influences(m);
  std::set<Edge> expected = testing::oracle_flows(g);
  for (const QualifiedId& n : g.nodes) expected.emplace(n, n);
  ClosureRelation rel(g);
  EXPECT_EQ(rel.pairs(), expected);
  EXPECT_EQ(rel.size(), expected.size());
}

TEST(ClosureTest, EmptyGraphIsReflexive) {
  InfluenceGraph g;
  g.nodes = {id("a", "S"), id("b", "S"), op("f")};
  ClosureRelation rel(g);
  EXPECT_EQ(rel.size(), 3u);
  for (const QualifiedId& n : g.nodes) EXPECT_TRUE(rel.contains(n, n));
  EXPECT_FALSE(rel.contains(id("a", "S"), id("b", "S")));
  EXPECT_FALSE(rel.contains(id("nope", "S"), id("nope", "S")));
  EXPECT_TRUE(rel.reachable_from(id("nope", "S")).empty());
  EXPECT_EQ(ClosureRelation(InfluenceGraph{}).size(), 0u);
}

TEST(ClosureTest, CyclesAndWideGraphs) {
  InfluenceGraph g;
  // A 130-node ring crosses several 64-bit words.
  for (int i = 0; i < 130; ++i) {
    g.edges.insert({id("n" + std::to_string(i), "S"), id("n" + std::to_string((i + 1) % 130), "S")});
  }
  ClosureRelation rel(g);
  EXPECT_EQ(rel.size(), 130u * 130u);
  EXPECT_TRUE(rel.contains(id("n129", "S"), id("n0", "S")));
}

TEST(TrustTest, Fig3Endpoints) {
  TrustMap t = classify_endpoints(load_fixture("fig3.sbd"));
  EXPECT_EQ(t.untrusted_sources, (std::set<QualifiedId>{id("y", "Contacts")}));
  EXPECT_TRUE(t.untrusted_sinks.empty());  // PhoneApp names its app
  EXPECT_TRUE(t.untrusted_reachable.count(id("Status", "SaveStatus")));
  EXPECT_FALSE(t.untrusted_reachable.count(op("sendMsg")));
}

TEST(TrustTest, ResourcesAndProxies) {
  AppModel m = parse_ok(
      "app \"a\" screen S { EditText E = \"\" TextView T = r() use EXT_STORE.read"
      " TextView K = k() use KEYSTORE.getKey TextView F = g() use PARTNER.share"
      " transition t order 1 dest P cond w(E) use HTTP.post { param q = E } }"
      " proxy P uri \"ext://p/{q}\"");
  TrustMap t = classify_endpoints(m);
  EXPECT_EQ(t.untrusted_sources, (std::set<QualifiedId>{op("g"), op("r"), op("w")}));
  EXPECT_EQ(t.untrusted_sinks, (std::set<QualifiedId>{op("g"), op("r"), op("w"), id("q", "P")}));
}

TEST(AnalyzeTest, Fig3Violations) {
  AppModel m = load_fixture("fig3.sbd");
  std::vector<FlowViolation> v = analyze(m);
  ASSERT_EQ(v.size(), 5u);
  for (const FlowViolation& f : v) {
    EXPECT_EQ(f.kind, ViolationKind::kIntegrity);
    EXPECT_EQ(f.source, id("y", "Contacts"));
  }
  // Sorted by sink.
  EXPECT_EQ(v[0].sink, id("Phone", "Contacts"));
  const FlowViolation& status = v[1];
  EXPECT_EQ(status.sink, id("Status", "SaveStatus"));
  EXPECT_EQ(status.witness, (std::vector<QualifiedId>{id("y", "Contacts"), id("Phone", "Contacts"),
                                                     id("x", "SaveStatus"), op("dispMsg"),
                                                     id("Status", "SaveStatus")}));

  EXPECT_EQ(violation_sites(m), (std::set<ViolationSite>{{ViolationKind::kIntegrity, id("Phone", "Contacts")},
                                                         {ViolationKind::kIntegrity, op("dispMsg")}}));
}

TEST(AnalyzeTest, Fig3SafeWidgetClearsEverything) {
  AppModel m = load_fixture("fig3_safe.sbd");
  EXPECT_TRUE(analyze(m).empty());
  EXPECT_TRUE(violation_sites(m).empty());
  EXPECT_TRUE(flow_diagnostics(run_flow_analysis(m)).empty());
}

TEST(AnalyzeTest, SafeWidgetCutsBothSides) {
  // y -> W -> k with W safe: no path from y to k survives.
  AppModel m = parse_ok(
      "app \"a\" screen S uri \"app://s/{y}\" { param y safe TextView W = y"
      " transition t order 1 dest P { param k = W } } proxy P uri \"ext://p/{k}\"");
  FlowReport r = run_flow_analysis(m);
  EXPECT_EQ(r.safe.edges, (std::set<Edge>{{id("y", "S"), id("W", "S")}, {id("W", "S"), id("k", "P")}}));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.safe.warnings.empty());

  m.screens[0].widgets[0].safe = false;
  std::vector<FlowViolation> v = analyze(m);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0].kind, ViolationKind::kIntegrity);
  EXPECT_EQ(v.back().kind, ViolationKind::kConfidentiality);
  EXPECT_EQ(v.back().source, id("y", "S"));
  EXPECT_EQ(v.back().sink, id("k", "P"));
}

TEST(AnalyzeTest, EveryPathMustBeCut) {
  AppModel m = parse_ok(
      "app \"a\" screen S uri \"app://s/{y}\" { param y TextView A = f(safe y) TextView B = g(y) }");
  std::vector<FlowViolation> v = analyze(m);
  std::set<QualifiedId> sinks;
  for (const auto& f : v) sinks.insert(f.sink);
  EXPECT_EQ(sinks, (std::set<QualifiedId>{op("g"), id("B", "S")}));
}

TEST(AnalyzeTest, WitnessIsShortestThenLeast) {
  AppModel m = parse_ok(
      "app \"a\" screen S uri \"app://s/{y}\" { param y TextView B = b(y) TextView A = a(y)"
      " TextView Z = z(a(y), b(y)) }");
  for (const FlowViolation& f : analyze(m)) {
    if (f.sink == op("z")) {
      EXPECT_EQ(f.witness, (std::vector<QualifiedId>{id("y", "S"), op("a"), op("z")}));
    }
  }
}

TEST(AnalyzeTest, UnusedSafeMarksWarn) {
  AppModel m = parse_ok(
      "app \"a\" screen S { param p safe TextView Lonely = \"x\" TextView T = f(safe \"lit\")"
      " transition t order 1 dest S { param p = safe \"v\" } } proxy safe P uri \"ext://p\"");
  FlowReport r = run_flow_analysis(m);
  std::vector<Diagnostic> d = flow_diagnostics(r);
  ASSERT_EQ(d.size(), 4u);
  for (const Diagnostic& x : d) {
    EXPECT_EQ(x.code, "IF003");
    EXPECT_EQ(x.severity, Severity::kWarning);
  }
}

TEST(AnalyzeTest, DiagnosticsCarryWitnessAndSpan) {
  FlowReport r = run_flow_analysis(load_fixture("fig4.sbd"));
  std::vector<Diagnostic> d = flow_diagnostics(r);
  ASSERT_FALSE(d.empty());
  bool through_frag = false;
  for (const Diagnostic& x : d) {
    EXPECT_EQ(x.code, "IF001");
    ASSERT_TRUE(x.span.has_value());
    const auto& w = x.witness;
    for (std::size_t i = 0; i + 2 < w.size(); ++i) {
      through_frag |= w[i] == id("token", "Profile") && w[i + 1] == op("getFrag") &&
                      w[i + 2] == id("fragAddr", "LoginFrag");
    }
  }
  EXPECT_TRUE(through_frag);
}

TEST(AnalyzeTest, Fig4FixRemovesViolations) {
  EXPECT_TRUE(analyze(load_fixture("fig4_fixed.sbd")).empty());
}

TEST(AnalyzeTest, Fig5ConfidentialityIntoExternalStorage) {
  std::vector<FlowViolation> v = analyze(load_fixture("fig5.sbd"));
  std::set<QualifiedId> leaked_to;
  for (const auto& f : v) {
    if (f.kind == ViolationKind::kConfidentiality) leaked_to.insert(f.sink);
  }
  EXPECT_EQ(leaked_to, (std::set<QualifiedId>{op("save"), op("show")}));
  EXPECT_TRUE(analyze(load_fixture("fig5_fixed.sbd")).empty());
}

}  // namespace
}  // namespace storyboard
