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

#ifndef STORYBOARD_RULECHECK_H_
#define STORYBOARD_RULECHECK_H_

#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

// Design-time security rules.
//
//   RC001  error    custom resource with a priv capability and access all
//   RC002  error    WebView without a nonempty trust-patterns whitelist
//   RC003  warning  https operation with disableCertPin=true
//   RC004  warning  ssl-socket operation with disableCertPin=true
//   RC005  error    cipher operation whose key (first argument) does not come
//                   directly from a keystore operation
//   RC006  warning  plain HTTP use
std::vector<Diagnostic> check_access_control(const AppModel& model);
std::vector<Diagnostic> check_webview_whitelist(const AppModel& model);
std::vector<Diagnostic> check_cert_pinning(const AppModel& model);
std::vector<Diagnostic> check_cipher_keys(const AppModel& model);
std::vector<Diagnostic> check_plain_http(const AppModel& model);

struct RuleReport {
  std::vector<Diagnostic> findings;
  bool blocking = false;  // any error-severity finding
};

// Concatenation of the checks above in RC order.
RuleReport check_all(const AppModel& model);

}  // namespace storyboard

#endif  // STORYBOARD_RULECHECK_H_
