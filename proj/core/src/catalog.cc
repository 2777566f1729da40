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

#include "storyboard/catalog.h"

#include <algorithm>
#include <array>

namespace storyboard {
namespace {

constexpr Trust T = Trust::kTrusted;
constexpr Trust U = Trust::kUntrusted;
constexpr Trust N = Trust::kNone;

constexpr std::array<CatalogEntry, 17> kCatalog = {{
    {"INT_STORE", "read", T, T, kTagNone},
    {"INT_STORE", "write", T, T, kTagNone},
    {"EXT_STORE", "read", U, U, kTagNone},
    {"EXT_STORE", "write", U, U, kTagNone},
    {"HTTP", "get", U, U, kTagNone},
    {"HTTP", "post", U, U, kTagNone},
    {"HTTPS", "get", T, T, kTagHttps},
    {"HTTPS", "post", T, T, kTagHttps},
    {"SOCKET", "read", U, U, kTagNone},
    {"SOCKET", "write", U, U, kTagNone},
    {"SSL_SOCKET", "read", T, T, kTagSslSocket},
    {"SSL_SOCKET", "write", T, T, kTagSslSocket},
    {"CLIPBOARD", "read", U, U, kTagNone},
    {"CLIPBOARD", "write", U, U, kTagNone},
    {"KEYSTORE", "getKey", T, N, kTagKeystore},
    {"CRYPTO", "encrypt", N, N, kTagCipher},
    {"CRYPTO", "decrypt", N, N, kTagCipher},
}};

}  // namespace

std::span<const CatalogEntry> builtin_catalog() { return kCatalog; }

const CatalogEntry* find_builtin(std::string_view resource, std::string_view capability) {
  auto it = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const CatalogEntry& e) {
    return e.resource == resource && e.capability == capability;
  });
  return it == kCatalog.end() ? nullptr : &*it;
}

bool is_builtin_resource(std::string_view resource) {
  return std::any_of(kCatalog.begin(), kCatalog.end(),
                     [&](const CatalogEntry& e) { return e.resource == resource; });
}

CapabilityResolution resolve_capability(const AppModel& model, const CapabilityRef& ref) {
  if (is_builtin_resource(ref.resource)) {
    return find_builtin(ref.resource, ref.capability) ? CapabilityResolution::kBuiltin
                                                      : CapabilityResolution::kUnknownBuiltin;
  }
  if (const Resource* r = model.find_resource(ref.resource)) {
    bool offered = std::any_of(r->capabilities.begin(), r->capabilities.end(),
                               [&](const Capability& c) { return c.name == ref.capability; });
    return offered ? CapabilityResolution::kCustom : CapabilityResolution::kUnknownCustom;
  }
  return CapabilityResolution::kForeign;
}

}  // namespace storyboard
