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

#include "storyboard/diagnostic.h"

#include <algorithm>
#include <stdexcept>

namespace storyboard {

std::string QualifiedId::str() const {
  std::string out = base;
  out += '@';
  out += owner ? *owner : std::string(kOperationOwner);
  return out;
}

QualifiedId qualify(std::string_view id, std::string_view owner) {
  if (id.empty()) throw std::invalid_argument("qualify: empty identifier");
  if (owner == kOperationOwner) return QualifiedId::operation(std::string(id));
  return {std::string(id), std::string(owner)};
}

std::ostream& operator<<(std::ostream& os, const QualifiedId& id) { return os << id.str(); }

std::string_view to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

Diagnostic make_error(std::string code, std::string message, std::optional<SourceSpan> span) {
  return {Severity::kError, std::move(code), std::move(message), std::move(span), {}};
}

Diagnostic make_warning(std::string code, std::string message, std::optional<SourceSpan> span) {
  return {Severity::kWarning, std::move(code), std::move(message), std::move(span), {}};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

}  // namespace storyboard
