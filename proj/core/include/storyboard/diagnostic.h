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

#ifndef STORYBOARD_DIAGNOSTIC_H_
#define STORYBOARD_DIAGNOSTIC_H_

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace storyboard {

struct SourceSpan {
  std::string file;
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// A widget, parameter, or operation identifier qualified by its owner.
// Operations are globally scoped and carry no owning screen.
struct QualifiedId {
  std::string base;
  std::optional<std::string> owner;  // nullopt = OPERATION

  static QualifiedId operation(std::string name) { return {std::move(name), std::nullopt}; }
  bool is_operation() const { return !owner.has_value(); }
  std::string str() const;

  friend auto operator<=>(const QualifiedId&, const QualifiedId&) = default;
  friend bool operator==(const QualifiedId&, const QualifiedId&) = default;
};

inline constexpr std::string_view kOperationOwner = "OPERATION";

// Qualifies `id` by `owner`; pass kOperationOwner for operation names.
QualifiedId qualify(std::string_view id, std::string_view owner);

std::ostream& operator<<(std::ostream& os, const QualifiedId& id);

enum class Severity { kError, kWarning };

std::string_view to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  std::optional<SourceSpan> span;
  std::vector<QualifiedId> witness;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

Diagnostic make_error(std::string code, std::string message,
                      std::optional<SourceSpan> span = std::nullopt);
Diagnostic make_warning(std::string code, std::string message,
                        std::optional<SourceSpan> span = std::nullopt);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace storyboard

#endif  // STORYBOARD_DIAGNOSTIC_H_
