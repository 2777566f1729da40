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

#include "storyboard/infoflow.h"

#include <algorithm>
#include <deque>
#include <functional>

#include "storyboard/catalog.h"

namespace storyboard {
namespace {

QualifiedId op_id(const OperationUse& use) { return QualifiedId::operation(use.name); }

// Node a value flows out of, or nullopt for literals.
std::optional<QualifiedId> value_node(const ValueBinding& value, std::string_view screen) {
  if (const OperationUse* use = value.op()) return op_id(*use);
  if (auto ref = value.reference()) return qualify(*ref, screen);
  return std::nullopt;
}

// Visits every direct edge with the site inducing it. `safe` is true when
// the site itself carries a safe mark on this edge (argument or binding).
class EdgeWalker {
 public:
  using Visit = std::function<void(const Edge&, const EdgeSite&, bool safe)>;

  EdgeWalker(const AppModel& model, Visit visit) : model_(model), visit_(std::move(visit)) {}

  void run() {
    for (const Screen& s : model_.screens) {
      for (const Widget& w : s.widgets) {
        if (auto from = value_node(w.value, s.name)) {
          visit_({*from, qualify(w.id, s.name)}, EdgeSite{EdgeSite::Kind::kWidgetValue, s.name, w.origin.span},
                 false);
        }
        walk_value(w.value, s.name);
      }
      for (const Transition& t : s.transitions) {
        if (t.guard) walk_guard(*t.guard, s.name);
        for (const ParamBinding& b : t.bindings) {
          if (auto from = value_node(b.value, s.name)) {
            visit_({*from, qualify(b.target, t.dest)}, EdgeSite{EdgeSite::Kind::kBinding, s.name, b.origin.span},
                   b.safe);
          }
          walk_value(b.value, s.name);
        }
      }
    }
  }

 private:
  void walk_call(const OperationUse& use, std::string_view screen) {
    for (const Arg& a : use.args) {
      if (auto from = value_node(a.value, screen)) {
        visit_({*from, op_id(use)}, EdgeSite{EdgeSite::Kind::kArgument, std::string(screen), use.origin.span},
               a.safe);
      }
      walk_value(a.value, screen);
    }
  }

  void walk_value(const ValueBinding& value, std::string_view screen) {
    if (const OperationUse* use = value.op()) walk_call(*use, screen);
  }

  void walk_guard(const BoolExpr& expr, std::string_view screen) {
    if (const auto* use = std::get_if<OperationUse>(&expr.node)) {
      walk_call(*use, screen);
    } else if (const auto* a = std::get_if<BoolAnd>(&expr.node)) {
      walk_guard(*a->lhs, screen);
      walk_guard(*a->rhs, screen);
    } else if (const auto* o = std::get_if<BoolOr>(&expr.node)) {
      walk_guard(*o->lhs, screen);
      walk_guard(*o->rhs, screen);
    } else if (const auto* n = std::get_if<BoolNot>(&expr.node)) {
      walk_guard(*n->operand, screen);
    }
  }

  const AppModel& model_;
  Visit visit_;
};

// Dense index over a graph's nodes with sorted adjacency over unsafe edges.
struct IndexedGraph {
  std::vector<QualifiedId> nodes;
  std::map<QualifiedId, std::size_t> index;
  std::vector<std::vector<std::size_t>> adjacency;

  IndexedGraph(const InfluenceGraph& graph, const std::set<Edge>& excluded)
      : nodes(graph.nodes.begin(), graph.nodes.end()), adjacency(nodes.size()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
    // graph.edges is sorted by (from, to), so each row comes out sorted.
    for (const Edge& e : graph.edges) {
      if (excluded.count(e)) continue;
      adjacency[index.at(e.first)].push_back(index.at(e.second));
    }
  }

  // Breadth-first parents from `source`. Visiting rows in index order makes
  // every recovered path the lexicographically least among shortest ones.
  std::vector<std::ptrdiff_t> bfs(std::size_t source) const {
    std::vector<std::ptrdiff_t> parent(nodes.size(), -1);
    std::vector<bool> seen(nodes.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adjacency[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        parent[v] = static_cast<std::ptrdiff_t>(u);
        queue.push_back(v);
      }
    }
    return parent;
  }

  std::vector<QualifiedId> path(const std::vector<std::ptrdiff_t>& parent, std::size_t source,
                                std::size_t sink) const {
    std::vector<QualifiedId> out;
    for (std::size_t v = sink; v != source; v = static_cast<std::size_t>(parent[v])) out.push_back(nodes[v]);
    out.push_back(nodes[source]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

struct OpTrust {
  bool source = false;
  bool sink = false;
};

std::map<std::string, OpTrust> operation_trust(const AppModel& model) {
  std::map<std::string, OpTrust> trust;
  for_each_operation(model, [&](const OpSite& site) {
    OpTrust& t = trust[site.use->name];
    if (!site.use->capability) return;
    switch (resolve_capability(model, *site.use->capability)) {
      case CapabilityResolution::kBuiltin: {
        const CatalogEntry* e = find_builtin(site.use->capability->resource, site.use->capability->capability);
        t.source |= e->source == Trust::kUntrusted;
        t.sink |= e->sink == Trust::kUntrusted;
        break;
      }
      case CapabilityResolution::kForeign:
        t.source = t.sink = true;
        break;
      default:
        break;
    }
  });
  return trust;
}

bool is_param(const AppModel& model, const QualifiedId& id) {
  if (id.is_operation()) return false;
  if (const Screen* s = model.find_screen(*id.owner)) return s->has_param(id.base);
  return model.find_proxy(*id.owner) != nullptr;
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  return kind == ViolationKind::kIntegrity ? "integrity" : "confidentiality";
}

InfluenceGraph build_influences(const AppModel& model) {
  InfluenceGraph g;
  for (const Screen& s : model.screens) {
    for (const std::string& p : s.params) g.nodes.insert(qualify(p, s.name));
    for (const Widget& w : s.widgets) g.nodes.insert(qualify(w.id, s.name));
  }
  for (const ProxyScreen& p : model.proxies) {
    for (const std::string& param : p.params()) g.nodes.insert(qualify(param, p.name));
  }
  for_each_operation(model, [&](const OpSite& site) { g.nodes.insert(op_id(*site.use)); });
  EdgeWalker(model, [&](const Edge& e, const EdgeSite& site, bool) {
    g.nodes.insert(e.first);
    g.nodes.insert(e.second);
    g.edges.insert(e);
    g.edge_origin[e].push_back(site);
  }).run();
  return g;
}

ClosureRelation::ClosureRelation(const InfluenceGraph& graph) {
  std::set<QualifiedId> all = graph.nodes;
  for (const Edge& e : graph.edges) {
    all.insert(e.first);
    all.insert(e.second);
  }
  nodes_.assign(all.begin(), all.end());
  words_ = (nodes_.size() + 63) / 64;
  const std::size_t n = nodes_.size();
  bits_.assign(n * words_, 0);
  auto set = [&](std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); };
  for (std::size_t i = 0; i < n; ++i) set(i, i);
  for (const Edge& e : graph.edges) set(*index_of(e.first), *index_of(e.second));
  // Warshall: after round k, row i holds everything reachable through 0..k.
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* row_k = &bits_[k * words_];
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t* row_i = &bits_[i * words_];
      if ((row_i[k / 64] >> (k % 64)) & 1) {
        for (std::size_t w = 0; w < words_; ++w) row_i[w] |= row_k[w];
      }
    }
  }
}

std::optional<std::size_t> ClosureRelation::index_of(const QualifiedId& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
  if (it == nodes_.end() || !(*it == id)) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool ClosureRelation::contains(const QualifiedId& from, const QualifiedId& to) const {
  auto i = index_of(from);
  auto j = index_of(to);
  if (!i || !j) return false;
  return (bits_[*i * words_ + *j / 64] >> (*j % 64)) & 1;
}

std::set<QualifiedId> ClosureRelation::reachable_from(const QualifiedId& from) const {
  std::set<QualifiedId> out;
  auto i = index_of(from);
  if (!i) return out;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    if ((bits_[*i * words_ + j / 64] >> (j % 64)) & 1) out.insert(nodes_[j]);
  }
  return out;
}

std::set<Edge> ClosureRelation::pairs() const {
  std::set<Edge> out;
  for (const QualifiedId& from : nodes_) {
    for (const QualifiedId& to : reachable_from(from)) out.emplace(from, to);
  }
  return out;
}

std::size_t ClosureRelation::size() const {
  std::size_t count = 0;
  for (std::uint64_t w : bits_) count += static_cast<std::size_t>(__builtin_popcountll(w));
  return count;
}

ClosureRelation closure(const InfluenceGraph& graph) { return ClosureRelation(graph); }

TrustMap classify_endpoints(const AppModel& model) {
  TrustMap map;
  for (const Screen& s : model.screens) {
    for (const Uri& u : s.uris) {
      for (const std::string& p : u.params) map.untrusted_sources.insert(qualify(p, s.name));
    }
  }
  for (const ProxyScreen& p : model.proxies) {
    if (p.app_id || p.safe) continue;
    for (const std::string& param : p.params()) map.untrusted_sinks.insert(qualify(param, p.name));
  }
  for (const auto& [name, trust] : operation_trust(model)) {
    if (trust.source) map.untrusted_sources.insert(QualifiedId::operation(name));
    if (trust.sink) map.untrusted_sinks.insert(QualifiedId::operation(name));
  }
  const ClosureRelation rel = closure(build_influences(model));
  for (const QualifiedId& s : map.untrusted_sources) {
    map.untrusted_reachable.insert(s);
    for (const QualifiedId& r : rel.reachable_from(s)) map.untrusted_reachable.insert(r);
  }
  return map;
}

SafeSet collect_safe(const AppModel& model, const InfluenceGraph& graph) {
  SafeSet safe;
  auto unused = [&](const std::string& what, const Origin& origin) {
    safe.warnings.push_back(make_warning("IF003", "safe mark on " + what + " declassifies no flow", origin.span));
  };
  // Edges marked at argument and binding sites.
  EdgeWalker(model, [&](const Edge& e, const EdgeSite&, bool marked) {
    if (marked) safe.edges.insert(e);
  }).run();

  auto visit_args = [&](auto&& self, const OperationUse& use) -> void {
    for (const Arg& a : use.args) {
      if (a.safe && a.value.is_literal()) unused("a literal argument of " + use.name, use.origin);
      if (const OperationUse* nested = a.value.op()) self(self, *nested);
    }
  };
  for_each_operation(model, [&](const OpSite& site) {
    if (site.parent == nullptr) visit_args(visit_args, *site.use);
  });

  for (const Screen& s : model.screens) {
    for (const Widget& w : s.widgets) {
      if (!w.safe) continue;
      const QualifiedId id = qualify(w.id, s.name);
      bool any = false;
      for (const Edge& e : graph.edges) {
        if (e.first == id || e.second == id) {
          safe.edges.insert(e);
          any = true;
        }
      }
      if (!any) unused("widget " + id.str(), w.origin);
    }
    for (const Transition& t : s.transitions) {
      for (const ParamBinding& b : t.bindings) {
        if (b.safe && b.value.is_literal()) unused("binding of " + qualify(b.target, t.dest).str(), b.origin);
      }
    }
  }
  for (const ProxyScreen& p : model.proxies) {
    if (!p.safe && !p.app_id) continue;
    bool any = false;
    for (const std::string& param : p.params()) {
      const QualifiedId id = qualify(param, p.name);
      for (const Edge& e : graph.edges) {
        if (e.second == id) {
          safe.edges.insert(e);
          any = true;
        }
      }
    }
    if (p.safe && !any) unused("proxy screen " + p.name, p.origin);
  }
  return safe;
}

namespace {

std::vector<FlowViolation> compute_violations(const InfluenceGraph& graph, const TrustMap& trust,
                                              const SafeSet& safe) {
  const IndexedGraph g(graph, safe.edges);
  std::vector<FlowViolation> integrity;
  std::vector<FlowViolation> confidentiality;
  for (std::size_t s = 0; s < g.nodes.size(); ++s) {
    const bool is_source = trust.untrusted_sources.count(g.nodes[s]) > 0;
    std::vector<std::ptrdiff_t> parent;
    bool searched = false;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      if (k == s) continue;
      const bool is_sink = trust.untrusted_sinks.count(g.nodes[k]) > 0;
      if (!is_source && !is_sink) continue;
      if (!searched) {
        parent = g.bfs(s);
        searched = true;
      }
      if (parent[k] < 0) continue;
      std::vector<QualifiedId> witness = g.path(parent, s, k);
      if (is_source) integrity.push_back({ViolationKind::kIntegrity, g.nodes[s], g.nodes[k], witness});
      if (is_sink) confidentiality.push_back({ViolationKind::kConfidentiality, g.nodes[s], g.nodes[k], witness});
    }
  }
  integrity.insert(integrity.end(), confidentiality.begin(), confidentiality.end());
  return integrity;
}

}  // namespace

FlowReport run_flow_analysis(const AppModel& model) {
  FlowReport report;
  report.graph = build_influences(model);
  report.trust = classify_endpoints(model);
  report.safe = collect_safe(model, report.graph);
  report.violations = compute_violations(report.graph, report.trust, report.safe);
  return report;
}

std::vector<FlowViolation> analyze(const AppModel& model) { return run_flow_analysis(model).violations; }

std::set<ViolationSite> violation_sites(const AppModel& model) {
  const FlowReport report = run_flow_analysis(model);
  const IndexedGraph g(report.graph, report.safe.edges);

  // Nodes reached from an untrusted source without crossing a safe edge.
  std::set<QualifiedId> tainted;
  for (const QualifiedId& source : report.trust.untrusted_sources) {
    auto it = g.index.find(source);
    if (it == g.index.end()) continue;
    tainted.insert(source);
    const auto parent = g.bfs(it->second);
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
      if (parent[v] >= 0) tainted.insert(g.nodes[v]);
    }
  }

  std::set<ViolationSite> sites;
  for (const Edge& e : report.graph.edges) {
    if (report.safe.edges.count(e)) continue;
    const auto& [from, to] = e;
    const bool from_tainted_param = is_param(model, from) && tainted.count(from) > 0;
    const bool from_untrusted_op = from.is_operation() && report.trust.untrusted_sources.count(from) > 0;
    const bool to_widget_or_op = !is_param(model, to);
    if ((from_tainted_param || from_untrusted_op) && to_widget_or_op) {
      sites.insert({ViolationKind::kIntegrity, to});
    }
    if (report.trust.untrusted_sinks.count(to) > 0) {
      sites.insert({ViolationKind::kConfidentiality, to});
    }
  }
  return sites;
}

std::vector<Diagnostic> flow_diagnostics(const FlowReport& report) {
  std::vector<Diagnostic> out;
  for (const FlowViolation& v : report.violations) {
    const bool integrity = v.kind == ViolationKind::kIntegrity;
    std::string message = integrity ? "untrusted source " + v.source.str() + " influences " + v.sink.str()
                                    : v.source.str() + " flows to untrusted sink " + v.sink.str();
    std::optional<SourceSpan> span;
    if (v.witness.size() >= 2) {
      const Edge last{v.witness[v.witness.size() - 2], v.witness.back()};
      auto it = report.graph.edge_origin.find(last);
      if (it != report.graph.edge_origin.end() && !it->second.empty()) span = it->second.front().span;
    }
    Diagnostic d = make_error(integrity ? "IF001" : "IF002", std::move(message), span);
    d.witness = v.witness;
    out.push_back(std::move(d));
  }
  out.insert(out.end(), report.safe.warnings.begin(), report.safe.warnings.end());
  return out;
}

}  // namespace storyboard
