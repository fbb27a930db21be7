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

#include "vlnaug/providers/factory.hpp"

#include <cstdlib>

#include "vlnaug/error.hpp"

namespace vlnaug::providers {

using nlohmann::json;

ProviderConfig ProviderConfig::from_json(const json& j) {
  ProviderConfig c;
  if (j.is_string()) {
    j.get_to(c.url);
    c.kind = c.url == "mock" ? ProviderKind::kMock : ProviderKind::kGateway;
    if (c.kind == ProviderKind::kMock) c.url.clear();
    return c;
  }
  require(j.is_object(), ErrorKind::kConfig, "provider config must be an object");
  try {
    const auto kind = j.value("kind", std::string("mock"));
    if (kind == "mock") {
      c.kind = ProviderKind::kMock;
    } else if (kind == "gateway") {
      c.kind = ProviderKind::kGateway;
    } else {
      fail(ErrorKind::kConfig, "unknown provider kind '" + kind + "'");
    }
    c.url = j.value("url", c.url);
    c.token = j.value("token", c.token);
    c.max_in_flight = j.value("max_in_flight", c.max_in_flight);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.base_delay_ms = j.value("base_delay_ms", c.base_delay_ms);
    c.timeout_s = j.value("timeout_s", c.timeout_s);
    c.malformed_if_contains = j.value("malformed_if_contains", c.malformed_if_contains);
    c.dim = j.value("dim", c.dim);
    c.embed_seed = j.value("seed", c.embed_seed);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("provider config: ") + e.what());
  }
  require(c.max_in_flight >= 1, ErrorKind::kConfig, "max_in_flight must be >= 1");
  require(c.max_attempts >= 1, ErrorKind::kConfig, "max_attempts must be >= 1");
  require(c.dim >= 1, ErrorKind::kConfig, "embedding dim must be >= 1");
  return c;
}

json ProviderConfig::to_json() const {
  json j{{"kind", kind == ProviderKind::kMock ? "mock" : "gateway"}};
  if (kind == ProviderKind::kGateway) {
    j["url"] = url;
    j["max_in_flight"] = max_in_flight;
    j["max_attempts"] = max_attempts;
    j["base_delay_ms"] = base_delay_ms;
    j["timeout_s"] = timeout_s;
  } else {
    if (!malformed_if_contains.empty()) j["malformed_if_contains"] = malformed_if_contains;
    j["dim"] = dim;
    j["seed"] = embed_seed;
  }
  return j;
}

bool ProviderConfigs::any_mock() const {
  return captioner.kind == ProviderKind::kMock || chat.kind == ProviderKind::kMock ||
         embedder.kind == ProviderKind::kMock || panorama.kind == ProviderKind::kMock;
}

bool ProviderConfigs::all_mock() const {
  return captioner.kind == ProviderKind::kMock && chat.kind == ProviderKind::kMock &&
         embedder.kind == ProviderKind::kMock && panorama.kind == ProviderKind::kMock;
}

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  if (!fallback.empty()) return fallback;
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

std::shared_ptr<GatewayClient> gateway_client(const ProviderConfig& c,
                                              std::shared_ptr<Transport> transport,
                                              const Sleeper& sleeper) {
  if (!transport) {
    const auto url = env_or("RAM_GATEWAY_URL", c.url);
    require(!url.empty(), ErrorKind::kConfig,
            "gateway provider selected but no url configured and RAM_GATEWAY_URL unset");
    transport = std::make_shared<HttpTransport>(url, std::chrono::seconds(c.timeout_s));
  }
  GatewayOptions opts;
  opts.token = env_or("RAM_GATEWAY_TOKEN", c.token);
  opts.retry.max_attempts = c.max_attempts;
  opts.retry.base_delay = std::chrono::milliseconds(c.base_delay_ms);
  opts.max_in_flight = c.max_in_flight;
  opts.sleeper = sleeper;
  return std::make_shared<GatewayClient>(std::move(transport), std::move(opts));
}

}  // namespace

ProviderSet make_providers(const ProviderConfigs& configs, std::shared_ptr<Transport> transport,
                           Sleeper sleeper) {
  ProviderSet set;
  if (configs.captioner.kind == ProviderKind::kMock) {
    set.captioner = std::make_shared<MockCaptioner>();
  } else {
    set.captioner =
        std::make_shared<GatewayCaptioner>(gateway_client(configs.captioner, transport, sleeper));
  }
  if (configs.chat.kind == ProviderKind::kMock) {
    set.chat = std::make_shared<MockChat>(MockChatOptions{configs.chat.malformed_if_contains});
  } else {
    set.chat = std::make_shared<GatewayChat>(gateway_client(configs.chat, transport, sleeper));
  }
  if (configs.embedder.kind == ProviderKind::kMock) {
    set.embedder = std::make_shared<MockEmbedder>(configs.embedder.dim, configs.embedder.embed_seed);
  } else {
    set.embedder =
        std::make_shared<GatewayEmbedder>(gateway_client(configs.embedder, transport, sleeper));
  }
  if (configs.panorama.kind == ProviderKind::kMock) {
    set.panorama = std::make_shared<MockPanoramaGenerator>();
  } else {
    set.panorama = std::make_shared<GatewayPanoramaGenerator>(
        gateway_client(configs.panorama, transport, sleeper));
  }
  return set;
}

}  // namespace vlnaug::providers
