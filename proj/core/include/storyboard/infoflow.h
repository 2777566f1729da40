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

#ifndef STORYBOARD_INFOFLOW_H_
#define STORYBOARD_INFOFLOW_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

using Edge = std::pair<QualifiedId, QualifiedId>;

// The syntax that induced a direct influence.
struct EdgeSite {
  enum class Kind { kWidgetValue, kBinding, kArgument };
  Kind kind = Kind::kWidgetValue;
  std::string screen;  // screen whose text contains the site
  std::optional<SourceSpan> span;

  friend bool operator==(const EdgeSite&, const EdgeSite&) = default;
};

// Direct influences between qualified identifiers. Nodes are every widget,
// screen param, proxy param and operation name of the model.
struct InfluenceGraph {
  std::set<QualifiedId> nodes;
  std::set<Edge> edges;
  std::map<Edge, std::vector<EdgeSite>> edge_origin;

  bool has_edge(const QualifiedId& from, const QualifiedId& to) const {
    return edges.count({from, to}) > 0;
  }
};

InfluenceGraph build_influences(const AppModel& model);

// Reflexive-transitive closure over the graph's nodes, stored as bit rows.
class ClosureRelation {
 public:
  explicit ClosureRelation(const InfluenceGraph& graph);

  bool contains(const QualifiedId& from, const QualifiedId& to) const;
  std::set<Edge> pairs() const;
  // Everything `from` reaches, itself included. Empty for unknown nodes.
  std::set<QualifiedId> reachable_from(const QualifiedId& from) const;
  std::size_t size() const;  // number of pairs

 private:
  std::optional<std::size_t> index_of(const QualifiedId& id) const;

  std::vector<QualifiedId> nodes_;  // sorted
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;  // nodes_.size() rows of words_ words
};

ClosureRelation closure(const InfluenceGraph& graph);

struct TrustMap {
  std::set<QualifiedId> untrusted_sources;
  std::set<QualifiedId> untrusted_sinks;
  std::set<QualifiedId> untrusted_reachable;
};

TrustMap classify_endpoints(const AppModel& model);

// Direct edges declassified by `safe` marks. `warnings` holds IF003 for
// every safe mark that declassifies nothing.
struct SafeSet {
  std::set<Edge> edges;
  std::vector<Diagnostic> warnings;
};

SafeSet collect_safe(const AppModel& model, const InfluenceGraph& graph);

enum class ViolationKind { kIntegrity, kConfidentiality };

std::string_view to_string(ViolationKind kind);

struct FlowViolation {
  ViolationKind kind = ViolationKind::kIntegrity;
  QualifiedId source;
  QualifiedId sink;
  std::vector<QualifiedId> witness;  // shortest, then lexicographically least

  friend bool operator==(const FlowViolation&, const FlowViolation&) = default;
};

// Path-cut analysis: (s, k) violates when s is an untrusted source
// (integrity) or k an untrusted sink (confidentiality) and some path s->k
// uses no safe edge. Self pairs never violate. Sorted by (kind, source, sink).
std::vector<FlowViolation> analyze(const AppModel& model);

struct ViolationSite {
  ViolationKind kind = ViolationKind::kIntegrity;
  QualifiedId site;

  friend auto operator<=>(const ViolationSite&, const ViolationSite&) = default;
  friend bool operator==(const ViolationSite&, const ViolationSite&) = default;
};

// Per-site grouping of the violations. An integrity site is a widget or
// operation fed by an unsafe edge from a tainted param or from an
// untrusted-source operation; a confidentiality site is an untrusted sink
// with an unsafe incoming edge.
std::set<ViolationSite> violation_sites(const AppModel& model);

// Everything the analysis computes, for callers that report on it.
struct FlowReport {
  InfluenceGraph graph;
  TrustMap trust;
  SafeSet safe;
  std::vector<FlowViolation> violations;
};

FlowReport run_flow_analysis(const AppModel& model);

// IF001 (integrity) / IF002 (confidentiality) errors, one per violation,
// followed by the IF003 unused-safe warnings.
std::vector<Diagnostic> flow_diagnostics(const FlowReport& report);

}  // namespace storyboard

#endif  // STORYBOARD_INFOFLOW_H_
