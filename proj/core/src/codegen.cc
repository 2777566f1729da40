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

#include "storyboard/codegen.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "storyboard/catalog.h"
#include "storyboard/formatter.h"
#include "storyboard/infoflow.h"
#include "storyboard/rulecheck.h"
#include "storyboard/validate.h"

namespace storyboard {
namespace {

bool shows_text(WidgetKind kind) { return kind != WidgetKind::kWebView; }

ValueType merge(std::optional<ValueType> seen, ValueType next) {
  if (!seen || *seen == next) return next;
  return ValueType::kOpaque;
}

const CatalogEntry* builtin_of(const OperationUse& use) {
  if (!use.capability) return nullptr;
  return find_builtin(use.capability->resource, use.capability->capability);
}

std::string transition_target(const AppModel& model, const Transition& t) {
  if (const ProxyScreen* p = model.find_proxy(t.dest)) {
    std::string out = "dispatch external uri " + quote(p->uri.text);
    if (p->app_id) out += " app " + quote(*p->app_id);
    return out;
  }
  return "navigate " + t.dest;
}

void emit_transition(std::ostream& os, const AppModel& model, const Screen& s, const Transition& t) {
  os << "  @transition " << s.name << "." << t.id << "\n";
  os << "  # order " << t.order << "\n";
  std::string indent = "  ";
  if (t.guard) {
    os << "  if " << format_guard(*t.guard) << ":\n";
    indent = "    ";
  }
  os << indent << transition_target(model, t) << "\n";
  for (const ParamBinding& b : t.bindings) {
    os << indent << "  with " << b.target << " = " << format_value(b.value) << (b.safe ? "  # declassified" : "")
       << "\n";
  }
  os << indent << "return\n";
}

}  // namespace

std::string_view to_string(ValueType type) {
  switch (type) {
    case ValueType::kText:
      return "text";
    case ValueType::kBoolean:
      return "boolean";
    case ValueType::kOpaque:
      return "opaque";
  }
  return "opaque";
}

SignatureInference infer_signatures(const AppModel& model) {
  SignatureInference out;
  std::set<std::string> boolean_ops;
  std::set<std::string> text_ops;

  // Params displayed as text: screen -> param names.
  std::map<std::string, std::set<std::string>> text_params;
  for (const Screen& s : model.screens) {
    for (const Widget& w : s.widgets) {
      if (!shows_text(w.kind)) continue;
      if (const auto* p = std::get_if<ParamRef>(&w.value.node)) text_params[s.name].insert(p->name);
    }
  }
  for (const Screen& s : model.screens) {
    for (const Widget& w : s.widgets) {
      if (const OperationUse* use = w.value.op(); use && shows_text(w.kind)) text_ops.insert(use->name);
    }
    for (const Transition& t : s.transitions) {
      for (const ParamBinding& b : t.bindings) {
        const OperationUse* use = b.value.op();
        if (use && text_params[t.dest].count(b.target)) text_ops.insert(use->name);
      }
    }
  }

  for_each_operation(model, [&](const OpSite& site) {
    OpSignature& sig = out.signatures[site.use->name];
    sig.name = site.use->name;
    if (site.position == OpPosition::kBoolean) boolean_ops.insert(site.use->name);
    if (!sig.capability && site.use->capability) sig.capability = site.use->capability;
    if (builtin_of(*site.use) != nullptr) sig.body = BodyKind::kGenerated;
  });
  for (auto& [name, sig] : out.signatures) {
    const bool boolean = boolean_ops.count(name) > 0;
    const bool text = text_ops.count(name) > 0;
    if (boolean && text) {
      out.errors.push_back(make_error("CG001", "operation " + name + " is used both as a condition and as text"));
    }
    sig.return_type = boolean ? ValueType::kBoolean : text ? ValueType::kText : ValueType::kOpaque;
  }

  std::map<std::string, std::vector<std::optional<ValueType>>> seen;
  for_each_operation(model, [&](const OpSite& site) {
    auto& slots = seen[site.use->name];
    if (slots.size() < site.use->args.size()) slots.resize(site.use->args.size());
    for (std::size_t i = 0; i < site.use->args.size(); ++i) {
      const ValueBinding& v = site.use->args[i].value;
      ValueType type = ValueType::kOpaque;
      if (v.is_literal() || std::holds_alternative<WidgetRef>(v.node)) {
        type = ValueType::kText;
      } else if (const OperationUse* nested = v.op()) {
        type = out.signatures[nested->name].return_type;
      }
      slots[i] = merge(slots[i], type);
    }
  });
  for (auto& [name, slots] : seen) {
    OpSignature& sig = out.signatures[name];
    sig.param_types.clear();
    for (const auto& slot : slots) sig.param_types.push_back(slot.value_or(ValueType::kOpaque));
  }
  return out;
}

std::string Manifest::render() const {
  std::ostringstream os;
  os << "app " << quote(app_id) << "\n";
  for (const Declared& r : resources) {
    os << "resource " << r.name << " access " << to_string(r.access) << "\n";
    for (const Capability& c : r.capabilities) os << "  capability " << c.name << (c.priv ? " priv" : "") << "\n";
  }
  for (const auto& [resource, caps] : dependencies) {
    os << "dependency " << resource;
    for (const std::string& c : caps) os << " " << c;
    os << "\n";
  }
  for (const auto& [resource, caps] : external) {
    os << "external " << resource;
    for (const std::string& c : caps) os << " " << c;
    os << "\n";
  }
  for (const std::string& u : exported_uris) os << "export " << quote(u) << "\n";
  return os.str();
}

Manifest build_manifest(const AppModel& model) {
  Manifest m;
  m.app_id = model.app_id;
  for (const Resource& r : model.resources) m.resources.push_back({r.name, r.access, r.capabilities});
  for_each_operation(model, [&](const OpSite& site) {
    if (!site.use->capability) return;
    const CapabilityRef& cap = *site.use->capability;
    switch (resolve_capability(model, cap)) {
      case CapabilityResolution::kBuiltin:
        m.dependencies[cap.resource].insert(cap.capability);
        break;
      case CapabilityResolution::kForeign:
        m.external[cap.resource].insert(cap.capability);
        break;
      default:
        break;
    }
  });
  for (const Screen& s : model.screens) {
    for (const Uri& u : s.uris) m.exported_uris.push_back(u.text);
  }
  return m;
}

GeneratedUnit generate_screen_unit(const AppModel& model, const Screen& s) {
  std::ostringstream os;
  os << "# controller skeleton for screen " << s.name << "\n";
  os << "@screen " << s.name << "\n";
  if (s.name == start_screen(model)) os << "start\n";
  for (const Uri& u : s.uris) os << "uri " << quote(u.text) << "\n";
  os << "# good default: no task affinity, the screen never joins another app's task\n";
  os << "task-affinity none\n";

  os << "\nparams:\n";
  for (const std::string& p : s.params) {
    os << "  get " << p << "  # raises a runtime fault when the caller did not supply " << p << "\n";
  }

  os << "\nwidgets:\n";
  for (const Widget& w : s.widgets) {
    os << "  @widget " << s.name << "." << w.id << "\n";
    os << "  " << to_string(w.kind) << " " << w.id << " = " << format_value(w.value) << "\n";
    if (w.kind == WidgetKind::kWebView) {
      os << "    whitelist";
      for (const std::string& pattern : w.trust_patterns()) os << " " << quote(pattern);
      os << "\n";
      bool js = false;
      if (auto it = w.attributes.find(std::string(kAllowJs)); it != w.attributes.end()) {
        if (const bool* b = std::get_if<bool>(&it->second)) js = *b;
      }
      os << "    javascript " << (js ? "on" : "off") << "\n";
    }
  }

  const std::vector<Transition> ordered = out_transitions(model, s.name);
  // One handler per (widget, gesture), in order of its first transition.
  std::vector<UserAction> actions;
  for (const Transition& t : ordered) {
    if (t.user_action && std::find(actions.begin(), actions.end(), *t.user_action) == actions.end()) {
      actions.push_back(*t.user_action);
    }
  }
  for (const UserAction& ua : actions) {
    os << "\nhandler " << ua.widget << "." << to_string(ua.gesture) << ":\n";
    for (const Transition& t : ordered) {
      if (t.user_action && *t.user_action == ua) emit_transition(os, model, s, t);
    }
  }
  os << "\non-load:\n";
  for (const Transition& t : ordered) {
    if (!t.user_action) emit_transition(os, model, s, t);
  }
  return {"screens/" + s.name + ".ctrl", os.str()};
}

GeneratedUnit generate_resource_unit(const AppModel&, const Resource& r) {
  std::ostringstream os;
  os << "# message endpoint skeleton for resource " << r.name << "\n";
  os << "@resource " << r.name << "\n";
  os << "access " << to_string(r.access) << "\n";
  switch (r.access) {
    case Access::kAll:
      os << "# callable by any app\n";
      break;
    case Access::kUser:
      os << "# callers need a permission granted by the user\n";
      break;
    case Access::kOwn:
      os << "# same-signature-only: callers must be signed with this app's key\n";
      break;
  }
  for (const Capability& c : r.capabilities) {
    os << "\ncapability " << c.name << (c.priv ? " priv" : "") << "\n";
    os << "## HOOK " << r.name << "." << c.name << "\n";
  }
  return {"resources/" + r.name + ".res", os.str()};
}

GeneratedUnit generate_ops_unit(const AppModel& model, const SignatureInference& inference) {
  // Whether any use of an op turns pinning off.
  std::set<std::string> unpinned;
  for_each_operation(model, [&](const OpSite& site) {
    if (site.use->attribute_true(kDisableCertPin)) unpinned.insert(site.use->name);
  });

  std::ostringstream os;
  os << "# operation stubs\n";
  for (const auto& [name, sig] : inference.signatures) {
    os << "\n@operation " << name << "\n";
    os << "fun " << name << "(";
    for (std::size_t i = 0; i < sig.param_types.size(); ++i) {
      if (i > 0) os << ", ";
      os << "p" << (i + 1) << ": " << to_string(sig.param_types[i]);
    }
    os << ") -> " << to_string(sig.return_type) << "\n";
    if (sig.capability) os << "  uses " << sig.capability->resource << "." << sig.capability->capability << "\n";
    if (sig.body == BodyKind::kHook) {
      os << "## HOOK " << name << "\n";
      continue;
    }
    const CatalogEntry* e = find_builtin(sig.capability->resource, sig.capability->capability);
    os << "  body generated from " << e->resource << "." << e->capability << "\n";
    if (e->has(kTagHttps) || e->has(kTagSslSocket)) {
      if (unpinned.count(name)) {
        os << "  # certificate pinning disabled by disableCertPin\n";
      } else {
        os << "  # good default: certificate pinning enabled\n";
      }
    }
    if (e->has(kTagCipher)) os << "  # good default: fresh random IV for every call\n";
    if (e->has(kTagKeystore)) os << "  # key material stays inside the platform key store\n";
  }
  return {"ops.stub", os.str()};
}

Generation generate_all(const AppModel& model) {
  Generation gen;
  std::vector<Diagnostic> problems = validate(model);
  if (has_errors(problems)) {
    gen.findings = std::move(problems);
    return gen;
  }
  FlowReport flow = run_flow_analysis(model);
  std::vector<Diagnostic> flow_findings = flow_diagnostics(flow);
  RuleReport rules = check_all(model);
  SignatureInference inference = infer_signatures(model);

  std::vector<Diagnostic> all = flow_findings;
  all.insert(all.end(), rules.findings.begin(), rules.findings.end());
  all.insert(all.end(), inference.errors.begin(), inference.errors.end());
  if (has_errors(all)) {
    for (Diagnostic& d : all) {
      if (d.severity == Severity::kError) gen.findings.push_back(std::move(d));
    }
    return gen;
  }
  gen.findings = std::move(all);

  for (const Screen& s : model.screens) gen.units.push_back(generate_screen_unit(model, s));
  for (const Resource& r : model.resources) gen.units.push_back(generate_resource_unit(model, r));
  gen.units.push_back(generate_ops_unit(model, inference));
  gen.manifest = build_manifest(model);
  gen.units.push_back({"manifest.txt", gen.manifest.render()});
  gen.ok = true;
  return gen;
}

void write_units(const std::filesystem::path& dir, const std::vector<GeneratedUnit>& units) {
  for (const GeneratedUnit& u : units) {
    const std::filesystem::path target = dir / u.path;
    std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out << u.contents;
    if (!out) throw std::runtime_error("cannot write " + target.string());
  }
}

}  // namespace storyboard
