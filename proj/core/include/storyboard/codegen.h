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

#ifndef STORYBOARD_CODEGEN_H_
#define STORYBOARD_CODEGEN_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "storyboard/diagnostic.h"
#include "storyboard/model.h"

namespace storyboard {

enum class ValueType { kText, kBoolean, kOpaque };
enum class BodyKind { kGenerated, kHook };

std::string_view to_string(ValueType type);

struct OpSignature {
  std::string name;
  std::vector<ValueType> param_types;
  ValueType return_type = ValueType::kOpaque;
  std::optional<CapabilityRef> capability;
  BodyKind body = BodyKind::kHook;

  friend bool operator==(const OpSignature&, const OpSignature&) = default;
};

struct SignatureInference {
  std::map<std::string, OpSignature> signatures;
  std::vector<Diagnostic> errors;  // CG001 for boolean/text conflicts
};

// Return types: boolean when used as a condition; text when shown by a
// TextView, EditText or Button directly or through a bound param; else
// opaque. Param types: widget or literal -> text, op result -> that op's
// return type, param -> opaque; disagreeing uses make a position opaque.
SignatureInference infer_signatures(const AppModel& model);

struct GeneratedUnit {
  std::string path;  // relative, '/' separated
  std::string contents;

  friend bool operator==(const GeneratedUnit&, const GeneratedUnit&) = default;
};

struct Manifest {
  struct Declared {
    std::string name;
    Access access = Access::kAll;
    std::vector<Capability> capabilities;
    friend bool operator==(const Declared&, const Declared&) = default;
  };

  std::string app_id;
  std::vector<Declared> resources;
  std::map<std::string, std::set<std::string>> dependencies;  // builtin resource -> capabilities
  std::map<std::string, std::set<std::string>> external;      // other apps' resources
  std::vector<std::string> exported_uris;

  std::string render() const;
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

Manifest build_manifest(const AppModel& model);

GeneratedUnit generate_screen_unit(const AppModel& model, const Screen& screen);
GeneratedUnit generate_resource_unit(const AppModel& model, const Resource& resource);
GeneratedUnit generate_ops_unit(const AppModel& model, const SignatureInference& inference);

struct Generation {
  bool ok = false;
  std::vector<GeneratedUnit> units;  // screens, resources, ops.stub, manifest.txt
  Manifest manifest;
  // On refusal, the blocking findings; on success, any warnings.
  std::vector<Diagnostic> findings;
};

// Refuses (ok = false) when the model has validation errors, information
// flow violations or rule errors.
Generation generate_all(const AppModel& model);

// Writes units below `dir`, creating directories. Throws
// std::filesystem::filesystem_error or std::runtime_error on IO failure.
void write_units(const std::filesystem::path& dir, const std::vector<GeneratedUnit>& units);

}  // namespace storyboard

#endif  // STORYBOARD_CODEGEN_H_
