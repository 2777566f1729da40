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

#ifndef STORYBOARD_CATALOG_H_
#define STORYBOARD_CATALOG_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "storyboard/model.h"

namespace storyboard {

enum class Trust { kTrusted, kUntrusted, kNone };

enum CapabilityTag : std::uint8_t {
  kTagNone = 0,
  kTagHttps = 1 << 0,
  kTagSslSocket = 1 << 1,
  kTagCipher = 1 << 2,
  kTagKeystore = 1 << 3,
};

struct CatalogEntry {
  std::string_view resource;
  std::string_view capability;
  Trust source;
  Trust sink;
  std::uint8_t tags;

  bool has(CapabilityTag tag) const { return (tags & tag) != 0; }
};

// The fixed table of builtin resources. Immutable.
std::span<const CatalogEntry> builtin_catalog();

const CatalogEntry* find_builtin(std::string_view resource, std::string_view capability);
bool is_builtin_resource(std::string_view resource);

// How a `use R.C` clause resolves against the catalog and the model.
enum class CapabilityResolution {
  kBuiltin,         // R builtin, C offered
  kCustom,          // R declared in this model, C offered
  kForeign,         // R neither builtin nor declared: another app's resource
  kUnknownBuiltin,  // R builtin but C not offered
  kUnknownCustom,   // R declared but C not offered
};

CapabilityResolution resolve_capability(const AppModel& model, const CapabilityRef& ref);

}  // namespace storyboard

#endif  // STORYBOARD_CATALOG_H_
