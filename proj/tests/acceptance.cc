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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. Time limits are fixed here.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sbc/driver.h"
#include "storyboard/codegen.h"
#include "storyboard/formatter.h"
#include "storyboard/infoflow.h"
#include "storyboard/interpreter.h"
#include "storyboard/parser.h"
#include "storyboard/rulecheck.h"
#include "storyboard/scenario.h"
#include "storyboard/validate.h"
#include "support/random_model.h"

namespace storyboard {
namespace {

using testing::load_fixture;
using testing::read_fixture;
using Clock = std::chrono::steady_clock;

constexpr double kFixtureLimitSeconds = 1.0;   // criteria 1-4
constexpr double kClosureLimitSeconds = 30.0;  // criterion 5
constexpr double kSoundnessLimitSeconds = 60.0;
constexpr double kCorpusLimitSeconds = 5.0;
constexpr int kClosureModels = 1000;
constexpr int kRunPairs = 200;
constexpr int kStepBudget = 50;
constexpr std::uint64_t kSeed = 0x5eed2026;

// Collects the reasons a criterion failed.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  std::string detail() const {
    std::string out;
    for (const std::string& f : failures_) out += (out.empty() ? "" : "; ") + f;
    return out;
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

QualifiedId id(std::string_view base, std::string_view owner) { return qualify(base, owner); }
QualifiedId op(std::string_view name) { return QualifiedId::operation(std::string(name)); }

std::vector<std::string> codes(const std::vector<Diagnostic>& d) {
  std::vector<std::string> out;
  for (const Diagnostic& x : d) out.push_back(x.code);
  return out;
}

// All blocking findings a storyboard gets from validation, flow analysis and rules.
std::vector<Diagnostic> all_findings(const AppModel& m) {
  std::vector<Diagnostic> out = validate(m);
  if (has_errors(out)) return out;
  for (Diagnostic& d : flow_diagnostics(run_flow_analysis(m))) out.push_back(std::move(d));
  for (Diagnostic& d : check_all(m).findings) out.push_back(std::move(d));
  return out;
}

void criterion1(Check& c) {
  const AppModel m = load_fixture("fig3.sbd");
  const std::set<Edge> expected = {
      {id("y", "Contacts"), id("Phone", "Contacts")}, {id("Phone", "Contacts"), id("z", "PhoneApp")},
      {id("Phone", "Contacts"), id("x", "SaveStatus")}, {op("dispMsg"), id("Status", "SaveStatus")},
      {id("x", "SaveStatus"), op("dispMsg")},          {id("Phone", "Contacts"), op("savePhone")},
      {op("getContacts"), op("sendMsg")},
  };
  const InfluenceGraph g = build_influences(m);
  c.expect(g.edges == expected, "direct influences differ from the 7 published pairs");
  const ClosureRelation rel = closure(g);
  const QualifiedId y = id("y", "Contacts");
  for (const QualifiedId& to : {id("z", "PhoneApp"), id("x", "SaveStatus"), op("dispMsg"), id("Status", "SaveStatus")}) {
    c.expect(rel.contains(y, to), "closure lacks (y, " + to.str() + ")");
  }
  c.expect(rel.contains(id("x", "SaveStatus"), id("Status", "SaveStatus")), "closure lacks (x, Status)");
  const std::set<ViolationSite> sites = violation_sites(m);
  c.expect(sites == std::set<ViolationSite>{{ViolationKind::kIntegrity, id("Phone", "Contacts")},
                                            {ViolationKind::kIntegrity, op("dispMsg")}},
           "violation sites are not exactly {Phone@Contacts, dispMsg}");
  c.expect(analyze(load_fixture("fig3_safe.sbd")).empty(), "safe y->Phone still reports violations");
}

void criterion2(Check& c) {
  bool found = false;
  for (const FlowViolation& v : analyze(load_fixture("fig4.sbd"))) {
    if (v.kind != ViolationKind::kIntegrity) continue;
    for (std::size_t i = 0; i + 2 < v.witness.size(); ++i) {
      found |= v.witness[i] == id("token", "Profile") && v.witness[i + 1] == op("getFrag") &&
               v.witness[i + 2] == id("fragAddr", "LoginFrag");
    }
  }
  c.expect(found, "no integrity witness through token -> getFrag -> fragAddr");
  const AppModel fixed = load_fixture("fig4_fixed.sbd");
  c.expect(analyze(fixed).empty(), "fixed storyboard still has violations");
  bool literal_fix = false;
  for (const Transition& t : fixed.find_screen("Profile")->transitions) {
    for (const ParamBinding& b : t.bindings) literal_fix |= b.target == "fragAddr" && b.value == ValueBinding{Literal{"profile"}};
  }
  c.expect(literal_fix, "fix is not param fragAddr = \"profile\"");
}

void criterion3(Check& c) {
  const AppModel m = load_fixture("fig5.sbd");
  std::set<QualifiedId> leaked;
  for (const FlowViolation& v : analyze(m)) {
    if (v.kind == ViolationKind::kConfidentiality) leaked.insert(v.sink);
  }
  c.expect(leaked.count(op("save")) && leaked.count(op("show")), "no confidentiality violation into save/show");
  const std::vector<Diagnostic> rules = check_all(m).findings;
  c.expect(rules.size() == 1 && rules[0].code == "RC002" && rules[0].message.find("wv@Display") != std::string::npos,
           "RC002 on wv missing or not alone");
  c.expect(!has_errors(all_findings(load_fixture("fig5_fixed.sbd"))), "fixed storyboard still has errors");
}

void criterion4(Check& c) {
  struct Case {
    const char* code;
    Severity severity;
  };
  for (const Case& k : {Case{"RC001", Severity::kError}, Case{"RC002", Severity::kError},
                        Case{"RC003", Severity::kWarning}, Case{"RC004", Severity::kWarning},
                        Case{"RC005", Severity::kError}}) {
    std::string stem = k.code;
    std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char ch) { return std::tolower(ch); });
    const RuleReport pos = check_all(load_fixture("rules/" + stem + "_pos.sbd"));
    c.expect(pos.findings.size() == 1 && pos.findings[0].code == k.code && pos.findings[0].severity == k.severity,
             std::string(k.code) + " positive fixture mismatch");
    c.expect(check_all(load_fixture("rules/" + stem + "_neg.sbd")).findings.empty(),
             std::string(k.code) + " negative fixture is not clean");
  }
  // Pinning is on unless disableCertPin says otherwise.
  auto r = parse("app \"a\" screen S { TextView A = a() use HTTPS.get TextView B = b() use SSL_SOCKET.read }", "p.sbd");
  c.expect(r.ok() && check_cert_pinning(*r.model).empty(), "pinning default produced a finding");
}

void criterion5(Check& c) {
  std::mt19937_64 rng(kSeed);
  int disagreements = 0;
  for (int i = 0; i < kClosureModels; ++i) {
    const InfluenceGraph g = build_influences(testing::random_model(rng));
    std::set<Edge> expected = testing::oracle_flows(g);
    for (const QualifiedId& n : g.nodes) expected.emplace(n, n);
    if (closure(g).pairs() != expected) ++disagreements;
  }
  c.expect(disagreements == 0, std::to_string(disagreements) + " models disagree with the oracle");
}

struct RunPair {
  AppModel model;
  Scenario scenario;
};

std::vector<RunPair> run_pairs() {
  std::mt19937_64 rng(kSeed + 1);
  std::vector<RunPair> out;
  for (int i = 0; i < kRunPairs; ++i) {
    AppModel m = testing::random_model(rng);
    Scenario s = testing::random_scenario(rng, m);
    s.op_results.clear();  // default results
    out.push_back({std::move(m), std::move(s)});
  }
  return out;
}

void criterion6(Check& c) {
  int counterexamples = 0;
  std::size_t observed = 0;
  for (const RunPair& p : run_pairs()) {
    const ClosureRelation rel = closure(build_influences(p.model));
    const Trace t = run(p.model, p.scenario, kStepBudget);
    c.expect(!t.error, "run aborted: " + t.error.value_or(""));
    for (const auto& [origin, holder] : taint_pairs(t)) {
      ++observed;
      if (!rel.contains(origin, holder)) ++counterexamples;
    }
  }
  c.expect(observed > 0, "runs produced no taint pairs");
  c.expect(counterexamples == 0, std::to_string(counterexamples) + " taint pairs outside the closure");
}

// A run is stuck when it ends early on a non-terminal configuration.
bool makes_progress(const AppModel& m, const Scenario& s) {
  const Trace t = run(m, s, kStepBudget);
  if (t.error) return false;
  for (std::size_t i = 0; i + 1 < t.steps.size(); ++i) {
    if (t.steps[i].config.terminal()) return false;
  }
  return t.terminated() || t.steps.size() == static_cast<std::size_t>(kStepBudget) + 1;
}

void criterion7(Check& c) {
  int stuck = 0;
  for (const RunPair& p : run_pairs()) stuck += makes_progress(p.model, p.scenario) ? 0 : 1;

  std::mt19937_64 rng(kSeed + 2);
  const std::vector<std::string> fixtures = {"fig3.sbd", "fig3_safe.sbd", "fig4.sbd",
                                             "fig4_fixed.sbd", "fig5.sbd", "fig5_fixed.sbd"};
  for (const std::string& name : fixtures) {
    const AppModel m = load_fixture(name);
    std::vector<Scenario> scenarios = {Scenario{}};
    for (int i = 0; i < 10; ++i) scenarios.push_back(testing::random_scenario(rng, m));
    if (name.rfind("fig3", 0) == 0) {
      for (const char* scn : {"fig3_save.scn", "fig3_uri.scn", "fig3_stop.scn"}) {
        scenarios.push_back(*parse_scenario(read_fixture(scn), scn).scenario);
      }
    }
    for (const Scenario& s : scenarios) {
      if (!makes_progress(m, s)) {
        ++stuck;
        c.expect(false, "stuck run on " + name);
      }
    }
  }
  c.expect(stuck == 0, std::to_string(stuck) + " stuck runs");
}

bool has_marker(const std::string& text, const std::string& marker) {
  return text.find(marker + "\n") != std::string::npos;
}

void criterion8(Check& c) {
  const Generation refused = generate_all(load_fixture("fig5.sbd"));
  c.expect(!refused.ok && refused.units.empty(), "generation not refused on the unfixed storyboard");
  bool rc002 = false;
  for (const Diagnostic& d : refused.findings) rc002 |= d.code == "RC002";
  c.expect(rc002, "refusal does not cite RC002");

  for (const char* name : {"fig5_fixed.sbd", "fig3_safe.sbd"}) {
    const AppModel m = load_fixture(name);
    const Generation a = generate_all(m);
    const Generation b = generate_all(m);
    c.expect(a.ok, std::string("generation refused on ") + name);
    c.expect(a.units == b.units, std::string("two generations differ on ") + name);
    std::string all;
    for (const GeneratedUnit& u : a.units) all += u.contents;
    for (const Screen& s : m.screens) {
      c.expect(has_marker(all, "@screen " + s.name), "no marker for screen " + s.name);
      for (const Widget& w : s.widgets) c.expect(has_marker(all, "@widget " + s.name + "." + w.id), "widget marker");
      for (const Transition& t : s.transitions) {
        c.expect(has_marker(all, "@transition " + s.name + "." + t.id), "transition marker");
      }
    }
    for (const Resource& r : m.resources) c.expect(has_marker(all, "@resource " + r.name), "no marker for " + r.name);
    for_each_operation(m, [&](const OpSite& site) {
      c.expect(has_marker(all, "@operation " + site.use->name), "no marker for operation " + site.use->name);
    });
  }
}

void criterion9(Check& c) {
  struct Case {
    const char* name;
    bool flow;
    bool rules;
  };
  // One fixture per category: C, I, N, P, S, Y, W.
  const Case cases[] = {
      {"c3", false, true}, {"i9", true, false}, {"n6", true, false}, {"n8", false, true}, {"p2", false, true},
      {"s2", true, false}, {"y5", true, false}, {"w2", false, true}, {"w3", true, true},
  };
  for (const Case& k : cases) {
    const std::string pre = std::string("corpus/") + k.name + ".sbd";
    const std::string post = std::string("corpus/") + k.name + "_fixed.sbd";
    bool flow = false;
    bool rules = false;
    bool other = false;
    for (const Diagnostic& d : all_findings(load_fixture(pre))) {
      if (d.code == "IF001" || d.code == "IF002") {
        flow = true;
      } else if (d.code.rfind("RC", 0) == 0) {
        rules = true;
      } else {
        other = true;
      }
    }
    c.expect(flow == k.flow && rules == k.rules && !other, pre + " flagged by the wrong method");
    c.expect(all_findings(load_fixture(post)).empty(), post + " still has findings");
  }
}

void criterion10(Check& c) {
  const std::filesystem::path root(SBC_FIXTURE_DIR);
  int checked = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (entry.path().extension() != ".sbd") continue;
    const std::string name = std::filesystem::relative(entry.path(), root).generic_string();
    const ParseOutcome first = parse(read_fixture(name), name);
    if (!first.ok()) continue;
    const ParseOutcome second = parse(format(*first.model), name);
    c.expect(second.ok() && *second.model == *first.model, "round trip fails on " + name);
    c.expect(second.ok() && format(*second.model) == format(*first.model), "format not a fixed point on " + name);
    ++checked;
  }
  c.expect(checked >= 30, "too few fixtures round-tripped");

  auto exit_code = [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    std::vector<std::string> argv = {"sbc"};
    argv.insert(argv.end(), args.begin(), args.end());
    return sbc::run_cli(argv, out, err);
  };
  const std::string dir = SBC_FIXTURE_DIR;
  c.expect(exit_code({"analyze", dir + "/fig3_safe.sbd"}) == 0, "clean input does not exit 0");
  c.expect(exit_code({"analyze", dir + "/fig3.sbd"}) == 1, "violating input does not exit 1");
  c.expect(exit_code({"analyze", dir + "/malformed.sbd"}) == 2, "malformed input does not exit 2");
  c.expect(exit_code({"check", dir + "/invalid.sbd"}) == 1, "ill-formed input does not exit 1");
  c.expect(exit_code({"analyze"}) == 2, "usage error does not exit 2");
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;  // 0 = untimed
  std::function<void(Check&)> body;
};

}  // namespace
}  // namespace storyboard

int main() {
  using storyboard::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "worked example: influences, closure, violation sites, safe fix", storyboard::kFixtureLimitSeconds,
       storyboard::criterion1},
      {2, "fragment injection example and fix", storyboard::kFixtureLimitSeconds, storyboard::criterion2},
      {3, "web view / external storage example and fixes", storyboard::kFixtureLimitSeconds, storyboard::criterion3},
      {4, "rule suite positive/negative fixtures", storyboard::kFixtureLimitSeconds, storyboard::criterion4},
      {5, "closure equals per-source reachability on 1000 random storyboards", storyboard::kClosureLimitSeconds,
       storyboard::criterion5},
      {6, "runtime taint pairs within closure on 200 random runs", storyboard::kSoundnessLimitSeconds,
       storyboard::criterion6},
      {7, "progress on random runs and canonical fixtures", 0, storyboard::criterion7},
      {8, "codegen gate, determinism and coverage", 0, storyboard::criterion8},
      {9, "vulnerability category corpus", storyboard::kCorpusLimitSeconds, storyboard::criterion9},
      {10, "round trip and CLI exit codes", 0, storyboard::criterion10},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    storyboard::Check check;
    const auto start = storyboard::Clock::now();
    try {
      c.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(storyboard::Clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      check.expect(false, "took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    }
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", check.ok() ? "PASS" : "FAIL", c.number, c.title, seconds,
                check.ok() ? "" : " -- ", check.detail().c_str());
    failed += check.ok() ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
