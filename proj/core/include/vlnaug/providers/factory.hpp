// Copyright 2026 The vlnaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/providers/gateway.hpp"
#include "vlnaug/providers/mock.hpp"
#include "vlnaug/providers/types.hpp"

namespace vlnaug::providers {

enum class ProviderKind { kMock, kGateway };

/// Per-role selection. Gateway URL/token fall back to RAM_GATEWAY_URL and
/// RAM_GATEWAY_TOKEN.
struct ProviderConfig {
  ProviderKind kind = ProviderKind::kMock;
  std::string url;
  std::string token;
  int max_in_flight = 4;
  int max_attempts = 5;
  int base_delay_ms = 1000;
  int timeout_s = 120;
  // mock-only knobs
  std::vector<std::string> malformed_if_contains;  // chat
  std::size_t dim = 64;                            // embedder
  std::uint64_t embed_seed = 0;                    // embedder

  static ProviderConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct ProviderConfigs {
  ProviderConfig captioner;
  ProviderConfig chat;
  ProviderConfig embedder;
  ProviderConfig panorama;

  bool any_mock() const;
  bool all_mock() const;
};

/// Builds the provider set. Gateway roles get independent clients (and
/// in-flight limits) over `transport` when given, else an HttpTransport.
ProviderSet make_providers(const ProviderConfigs& configs,
                           std::shared_ptr<Transport> transport = nullptr,
                           Sleeper sleeper = {});

}  // namespace vlnaug::providers
