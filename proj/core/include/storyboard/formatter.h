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

#ifndef STORYBOARD_FORMATTER_H_
#define STORYBOARD_FORMATTER_H_

#include <string>

#include "storyboard/model.h"

namespace storyboard {

// Canonical source text for `model`. Resources come first, then screens,
// then proxy screens; inside a screen params, widgets, then transitions.
// parse(format(m)) == m for every well-formed model.
std::string format(const AppModel& model);

// Pieces of the canonical syntax, shared with code generation.
std::string quote(std::string_view text);
std::string format_value(const ValueBinding& value);
std::string format_call(const OperationUse& use);
std::string format_guard(const BoolExpr& expr);
std::string format_attributes(const Attributes& attributes);

}  // namespace storyboard

#endif  // STORYBOARD_FORMATTER_H_
