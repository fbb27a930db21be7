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

#include "vlnaug/providers/types.hpp"

#include <spdlog/spdlog.h>

#include <cmath>

#include "vlnaug/error.hpp"

namespace vlnaug::providers {

nlohmann::json ChatRequest::to_json() const {
  nlohmann::json j{{"system", system_text},
                   {"user", user_text},
                   {"temperature", temperature},
                   {"presence_penalty", presence_penalty},
                   {"max_tokens", max_tokens}};
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

void validate(const ChatRequest& req) {
  require(!req.user_text.empty(), ErrorKind::kPrecondition, "chat: user_text is empty");
  require(req.temperature >= 0.0 && std::isfinite(req.temperature), ErrorKind::kPrecondition,
          "chat: temperature must be >= 0");
  require(req.max_tokens > 0, ErrorKind::kPrecondition, "chat: max_tokens must be positive");
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorKind::kProvider,
          "embedding dimension mismatch: " + std::to_string(a.size()) + " vs " +
              std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  const double ab = dot(a, b);
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return ab / (na * nb);
}

void normalize(std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n == 0.0) return;
  for (double& x : v) x /= n;
}

nlohmann::json PanoramaRequest::to_json() const {
  nlohmann::json j{{"prompt", prompt_text},
                   {"width", width},
                   {"height", height},
                   {"num_inference_steps", num_inference_steps}};
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

void validate(const PanoramaRequest& req) {
  require(!req.prompt_text.empty(), ErrorKind::kPrecondition, "panorama: empty prompt");
  require(req.height > 0 && req.width == 2 * req.height, ErrorKind::kPrecondition,
          "panorama: requested size must be 2:1, got " + std::to_string(req.width) + "x" +
              std::to_string(req.height));
  require(req.num_inference_steps > 0, ErrorKind::kPrecondition,
          "panorama: num_inference_steps must be positive");
}

std::int64_t SystemClock::now_ms() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::shared_ptr<Clock> system_clock() {
  static auto clock = std::make_shared<SystemClock>();
  return clock;
}

std::shared_ptr<Clock> fixed_clock() {
  static auto clock = std::make_shared<FixedClock>(0);
  return clock;
}

Traced<std::string> Captioner::caption(const Image& image) {
  require(!image.empty(), ErrorKind::kPrecondition, "caption: empty image");
  auto out = do_caption(image);
  require(!out.value.empty(), ErrorKind::kProtocol, id() + ": empty caption");
  return out;
}

Traced<std::string> ChatModel::chat(const ChatRequest& req) {
  validate(req);
  return do_chat(req);
}

void Embedder::check(const EmbedResult& r) {
  require(r.dim() > 0, ErrorKind::kProtocol, id() + ": empty embedding");
  double n = 0.0;
  for (double x : r.vector) n += x * x;
  require(std::abs(std::sqrt(n) - 1.0) <= 1e-6, ErrorKind::kProtocol,
          id() + ": embedding is not unit norm");
  std::lock_guard lock(mu_);
  if (!dim_) {
    dim_ = r.dim();
  } else {
    require(*dim_ == r.dim(), ErrorKind::kProtocol,
            id() + ": embedding dimension drifted from " + std::to_string(*dim_) + " to " +
                std::to_string(r.dim()));
  }
}

Traced<EmbedResult> Embedder::embed_text(std::string_view text) {
  auto out = do_embed_text(text);
  check(out.value);
  return out;
}

Traced<EmbedResult> Embedder::embed_image(const Image& image) {
  require(!image.empty(), ErrorKind::kPrecondition, "embed_image: empty image");
  auto out = do_embed_image(image);
  check(out.value);
  return out;
}

std::optional<std::size_t> Embedder::session_dim() const {
  std::lock_guard lock(mu_);
  return dim_;
}

Traced<corpus::Panorama> PanoramaGenerator::generate_panorama(const PanoramaRequest& req) {
  validate(req);
  auto raw = do_generate(req);
  Image img = std::move(raw.value);
  require(!img.empty(), ErrorKind::kProtocol, id() + ": empty panorama");
  if (img.width != 2 * img.height) {
    spdlog::warn("{}: generator returned {}x{}, resizing to {}x{}", id(), img.width, img.height,
                 req.width, req.height);
    img = resize_bilinear(img, req.width, req.height);
  }
  return {corpus::make_panorama(std::move(img), corpus::PanoramaSource::kGenerated, req.seed),
          std::move(raw.call)};
}

}  // namespace vlnaug::providers
