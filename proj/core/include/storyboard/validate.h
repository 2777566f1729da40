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

#ifndef STORYBOARD_VALIDATE_H_
#define STORYBOARD_VALIDATE_H_

#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

// Structural well-formedness checks (codes WF001..WF015). Pure; returns the
// diagnostics in model declaration order. Empty iff the model is well-formed.
//
//   WF001  duplicate screen or proxy name
//   WF002  start screen missing or ambiguous
//   WF003  resource/capability declarations
//   WF004  duplicate URI (parameters stripped) across screens
//   WF005  URIs of one screen disagree on their parameter sets
//   WF006  widget/param identifier clash within a screen
//   WF007  transition order indices are not 1..n
//   WF008  destination parameter bindings missing, extra or repeated
//   WF009  inconsistent operation use (arity or boolean position)
//   WF010  unknown screen, widget, param, resource or capability
//   WF011  illegal or ill-typed attribute
//   WF012  widget value refers to another widget
//   WF013  URI parameter not declared as a screen param
//   WF014  duplicate transition id within a screen
//   WF015  empty identifier or app id
std::vector<Diagnostic> validate(const AppModel& model);

}  // namespace storyboard

#endif  // STORYBOARD_VALIDATE_H_
