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

#include "storyboard/rulecheck.h"

#include <algorithm>

#include "storyboard/catalog.h"

namespace storyboard {
namespace {

const CatalogEntry* builtin_of(const OperationUse& use) {
  if (!use.capability) return nullptr;
  return find_builtin(use.capability->resource, use.capability->capability);
}

std::string where(const OpSite& site) {
  return "operation '" + site.use->name + "' on screen " + std::string(site.screen);
}

}  // namespace

std::vector<Diagnostic> check_access_control(const AppModel& model) {
  std::vector<Diagnostic> out;
  for (const Resource& r : model.resources) {
    const bool priv = std::any_of(r.capabilities.begin(), r.capabilities.end(),
                                  [](const Capability& c) { return c.priv; });
    if (priv && r.access == Access::kAll) {
      out.push_back(make_error("RC001",
                               "resource " + r.name + " exposes a priv capability with access all; use user or own",
                               r.origin.span));
    }
  }
  return out;
}

std::vector<Diagnostic> check_webview_whitelist(const AppModel& model) {
  std::vector<Diagnostic> out;
  for (const Screen& s : model.screens) {
    for (const Widget& w : s.widgets) {
      if (w.kind == WidgetKind::kWebView && w.trust_patterns().empty()) {
        out.push_back(make_error("RC002", "WebView " + w.id + "@" + s.name + " has no trust-patterns whitelist",
                                 w.origin.span));
      }
    }
  }
  return out;
}

std::vector<Diagnostic> check_cert_pinning(const AppModel& model) {
  std::vector<Diagnostic> out;
  for_each_operation(model, [&](const OpSite& site) {
    const CatalogEntry* e = builtin_of(*site.use);
    if (e == nullptr || !site.use->attribute_true(kDisableCertPin)) return;
    if (e->has(kTagHttps)) {
      out.push_back(make_warning("RC003", where(site) + " disables certificate pinning for HTTPS",
                                 site.use->origin.span));
    } else if (e->has(kTagSslSocket)) {
      out.push_back(make_warning("RC004", where(site) + " disables certificate pinning for an SSL socket",
                                 site.use->origin.span));
    }
  });
  // One pass emits both codes; keep RC003 before RC004.
  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.code < b.code; });
  return out;
}

std::vector<Diagnostic> check_cipher_keys(const AppModel& model) {
  std::vector<Diagnostic> out;
  for_each_operation(model, [&](const OpSite& site) {
    const CatalogEntry* e = builtin_of(*site.use);
    if (e == nullptr || !e->has(kTagCipher)) return;
    const OperationUse* key = site.use->args.empty() ? nullptr : site.use->args.front().value.op();
    const CatalogEntry* key_entry = key ? builtin_of(*key) : nullptr;
    if (key_entry == nullptr || !key_entry->has(kTagKeystore)) {
      out.push_back(make_error("RC005", where(site) + " does not take its key from a keystore operation",
                               site.use->origin.span));
    }
  });
  return out;
}

std::vector<Diagnostic> check_plain_http(const AppModel& model) {
  std::vector<Diagnostic> out;
  for_each_operation(model, [&](const OpSite& site) {
    if (site.use->capability && site.use->capability->resource == "HTTP") {
      out.push_back(make_warning("RC006", where(site) + " uses plain HTTP; prefer HTTPS", site.use->origin.span));
    }
  });
  return out;
}

RuleReport check_all(const AppModel& model) {
  RuleReport report;
  for (auto check : {check_access_control, check_webview_whitelist, check_cert_pinning, check_cipher_keys,
                     check_plain_http}) {
    std::vector<Diagnostic> found = check(model);
    report.findings.insert(report.findings.end(), found.begin(), found.end());
  }
  report.blocking = has_errors(report.findings);
  return report;
}

}  // namespace storyboard
