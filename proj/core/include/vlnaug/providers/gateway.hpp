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

// Providers backed by the HTTP model gateway:
//
//   POST /v1/caption      {image_b64}                         -> {text}
//   POST /v1/chat         {system, user, temperature,
//                          presence_penalty, max_tokens, seed} -> {text}
//   POST /v1/embed/text   {text}                              -> {vector, dim}
//   POST /v1/embed/image  {image_b64}                         -> {vector, dim}
//   POST /v1/panorama     {prompt, width, height,
//                          num_inference_steps, seed}         -> {image_b64}
//
// Images travel as base64 PNG. Auth is a bearer token.

#include <chrono>
#include <functional>
#include <memory>
#include <semaphore>
#include <string>

#include <nlohmann/json.hpp>

#include "vlnaug/providers/transport.hpp"
#include "vlnaug/providers/types.hpp"

namespace vlnaug::providers {

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds base_delay{1000};
  double factor = 2.0;

  /// Delay after failed attempt number `attempt` (1-based).
  std::chrono::milliseconds delay_after(int attempt) const;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

struct GatewayOptions {
  std::string token;
  RetryPolicy retry;
  int max_in_flight = 4;
  Sleeper sleeper;  // defaults to std::this_thread::sleep_for
  std::shared_ptr<Clock> clock = system_clock();
};

/// True for failures worth retrying: no response, 429, and 5xx.
bool is_transient(int status);

/// JSON-over-HTTP client with retries and a per-handle in-flight limit.
class GatewayClient {
 public:
  struct Reply {
    nlohmann::json body;
    int attempts = 0;
  };

  GatewayClient(std::shared_ptr<Transport> transport, GatewayOptions options);

  /// Transient failures are retried with exponential backoff (or the
  /// server's Retry-After); exhaustion or a permanent 4xx throws
  /// ProviderError carrying the last status. A 2xx body that is not JSON is
  /// a kProtocol error.
  Reply post(const std::string& path, const nlohmann::json& payload);

  std::string id() const { return "gateway:" + transport_->id(); }
  const Clock& clock() const { return *options_.clock; }

 private:
  std::shared_ptr<Transport> transport_;
  GatewayOptions options_;
  std::counting_semaphore<> slots_;
};

class GatewayCaptioner final : public Captioner {
 public:
  explicit GatewayCaptioner(std::shared_ptr<GatewayClient> client) : client_(std::move(client)) {}
  std::string id() const override { return client_->id(); }

 protected:
  Traced<std::string> do_caption(const Image& image) override;

 private:
  std::shared_ptr<GatewayClient> client_;
};

class GatewayChat final : public ChatModel {
 public:
  explicit GatewayChat(std::shared_ptr<GatewayClient> client) : client_(std::move(client)) {}
  std::string id() const override { return client_->id(); }

 protected:
  Traced<std::string> do_chat(const ChatRequest& req) override;

 private:
  std::shared_ptr<GatewayClient> client_;
};

class GatewayEmbedder final : public Embedder {
 public:
  explicit GatewayEmbedder(std::shared_ptr<GatewayClient> client) : client_(std::move(client)) {}
  std::string id() const override { return client_->id(); }

 protected:
  Traced<EmbedResult> do_embed_text(std::string_view text) override;
  Traced<EmbedResult> do_embed_image(const Image& image) override;

 private:
  Traced<EmbedResult> embed(const std::string& role, const std::string& path,
                            const nlohmann::json& payload, nlohmann::json params);
  std::shared_ptr<GatewayClient> client_;
};

class GatewayPanoramaGenerator final : public PanoramaGenerator {
 public:
  explicit GatewayPanoramaGenerator(std::shared_ptr<GatewayClient> client)
      : client_(std::move(client)) {}
  std::string id() const override { return client_->id(); }

 protected:
  Traced<Image> do_generate(const PanoramaRequest& req) override;

 private:
  std::shared_ptr<GatewayClient> client_;
};

}  // namespace vlnaug::providers
