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

#include "vlnaug/providers/gateway.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <thread>

#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"

namespace vlnaug::providers {

using nlohmann::json;

std::chrono::milliseconds RetryPolicy::delay_after(int attempt) const {
  const double ms = static_cast<double>(base_delay.count()) * std::pow(factor, attempt - 1);
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

bool is_transient(int status) { return status == 0 || status == 429 || status >= 500; }

GatewayClient::GatewayClient(std::shared_ptr<Transport> transport, GatewayOptions options)
    : transport_(std::move(transport)),
      options_(std::move(options)),
      slots_(std::max(1, options_.max_in_flight)) {
  require(transport_ != nullptr, ErrorKind::kConfig, "gateway: no transport");
  require(options_.retry.max_attempts >= 1, ErrorKind::kConfig,
          "gateway: max_attempts must be >= 1");
  if (!options_.sleeper) {
    options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
  if (!options_.clock) options_.clock = system_clock();
}

GatewayClient::Reply GatewayClient::post(const std::string& path, const json& payload) {
  const std::string body = payload.dump();
  HttpResponse res;
  for (int attempt = 1; attempt <= options_.retry.max_attempts; ++attempt) {
    slots_.acquire();
    try {
      res = transport_->post_json(path, body, options_.token);
    } catch (...) {
      slots_.release();
      throw;
    }
    slots_.release();

    if (res.status >= 200 && res.status < 300) {
      try {
        return {json::parse(res.body), attempt};
      } catch (const json::parse_error& e) {
        fail(ErrorKind::kProtocol, id() + path + ": response is not JSON: " + e.what());
      }
    }
    if (!is_transient(res.status)) {
      throw ProviderError(id() + path + ": HTTP " + std::to_string(res.status) + ": " + res.body,
                          res.status, attempt, false);
    }
    if (attempt == options_.retry.max_attempts) break;
    auto delay = options_.retry.delay_after(attempt);
    if (res.retry_after_s) {
      delay = std::chrono::milliseconds(static_cast<std::int64_t>(*res.retry_after_s * 1000.0));
    }
    spdlog::debug("{}{}: HTTP {} on attempt {}, retrying in {} ms", id(), path, res.status,
                  attempt, delay.count());
    options_.sleeper(delay);
  }
  throw ProviderError(id() + path + ": giving up after " +
                          std::to_string(options_.retry.max_attempts) + " attempts, last HTTP " +
                          std::to_string(res.status),
                      res.status, options_.retry.max_attempts, true);
}

namespace {

std::string image_b64(const Image& img) { return base64_encode(encode_png(img)); }

std::string text_field(const json& body, const std::string& where) {
  auto it = body.find("text");
  require(it != body.end() && it->is_string(), ErrorKind::kProtocol,
          where + ": response lacks a string 'text'");
  return it->get<std::string>();
}

}  // namespace

Traced<std::string> GatewayCaptioner::do_caption(const Image& image) {
  CallRecord rec{"caption", id(),
                 {{"image_sha256", image_digest(image)}, {"width", image.width},
                  {"height", image.height}},
                 0, 0, 0};
  auto reply = timed(client_->clock(), rec,
                     [&] { return client_->post("/v1/caption", {{"image_b64", image_b64(image)}}); });
  rec.attempts = reply.attempts;
  return {text_field(reply.body, id() + "/v1/caption"), std::move(rec)};
}

Traced<std::string> GatewayChat::do_chat(const ChatRequest& req) {
  CallRecord rec{"chat", id(), {}, 0, 0, 0};
  rec.params = {{"temperature", req.temperature},
                {"presence_penalty", req.presence_penalty},
                {"max_tokens", req.max_tokens},
                {"seed", req.seed ? json(*req.seed) : json(nullptr)},
                {"prompt_sha256", sha256_hex(req.system_text + "\n" + req.user_text)}};
  auto reply = timed(client_->clock(), rec, [&] { return client_->post("/v1/chat", req.to_json()); });
  rec.attempts = reply.attempts;
  return {text_field(reply.body, id() + "/v1/chat"), std::move(rec)};
}

Traced<EmbedResult> GatewayEmbedder::embed(const std::string& role, const std::string& path,
                                           const json& payload, json params) {
  CallRecord rec{role, id(), std::move(params), 0, 0, 0};
  auto reply = timed(client_->clock(), rec, [&] { return client_->post(path, payload); });
  rec.attempts = reply.attempts;
  const auto& body = reply.body;
  require(body.contains("vector") && body["vector"].is_array(), ErrorKind::kProtocol,
          id() + path + ": response lacks 'vector'");
  EmbedResult r;
  try {
    r.vector = body["vector"].get<std::vector<double>>();
  } catch (const json::exception&) {
    fail(ErrorKind::kProtocol, id() + path + ": 'vector' is not numeric");
  }
  if (body.contains("dim")) {
    require(body["dim"].is_number_integer() && body["dim"].get<std::size_t>() == r.dim(),
            ErrorKind::kProtocol, id() + path + ": 'dim' disagrees with vector length");
  }
  return {std::move(r), std::move(rec)};
}

Traced<EmbedResult> GatewayEmbedder::do_embed_text(std::string_view text) {
  return embed("embed_text", "/v1/embed/text", {{"text", std::string(text)}},
               {{"text_sha256", sha256_hex(text)}});
}

Traced<EmbedResult> GatewayEmbedder::do_embed_image(const Image& image) {
  return embed("embed_image", "/v1/embed/image", {{"image_b64", image_b64(image)}},
               {{"image_sha256", image_digest(image)}});
}

Traced<Image> GatewayPanoramaGenerator::do_generate(const PanoramaRequest& req) {
  CallRecord rec{"panorama", id(), req.to_json(), 0, 0, 0};
  rec.params.erase("prompt");
  rec.params["prompt_sha256"] = sha256_hex(req.prompt_text);
  auto reply = timed(client_->clock(), rec, [&] { return client_->post("/v1/panorama", req.to_json()); });
  rec.attempts = reply.attempts;
  auto it = reply.body.find("image_b64");
  require(it != reply.body.end() && it->is_string(), ErrorKind::kProtocol,
          id() + "/v1/panorama: response lacks 'image_b64'");
  Image img;
  try {
    img = decode_png(base64_decode(it->get<std::string>()));
  } catch (const Error& e) {
    fail(ErrorKind::kProtocol, id() + "/v1/panorama: undecodable image: " + e.what());
  }
  return {std::move(img), std::move(rec)};
}

}  // namespace vlnaug::providers
