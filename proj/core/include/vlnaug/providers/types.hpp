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

// Four foundation-model roles: captioner (VLM), chat (LLM), dual text/image
// embedder, and panorama text-to-image generator. Each role is an abstract
// class whose public entry point enforces the request/response contract and
// delegates to a protected do_*() hook.

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/corpus.hpp"
#include "vlnaug/image.hpp"
#include "vlnaug/provenance.hpp"

namespace vlnaug::providers {

inline constexpr double kDefaultTemperature = 0.8;
inline constexpr double kDefaultPresencePenalty = 0.0;
inline constexpr int kDefaultMaxTokens = 512;
inline constexpr int kDefaultInferenceSteps = 30;
inline constexpr int kDefaultPanoramaWidth = 1024;
inline constexpr int kDefaultPanoramaHeight = 512;

struct ChatRequest {
  std::string system_text;
  std::string user_text;
  double temperature = kDefaultTemperature;
  double presence_penalty = kDefaultPresencePenalty;
  int max_tokens = kDefaultMaxTokens;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

/// kPrecondition unless user_text is non-empty, temperature >= 0 and
/// max_tokens > 0.
void validate(const ChatRequest& req);

struct EmbedResult {
  std::vector<double> vector;  // unit norm
  std::size_t dim() const { return vector.size(); }
};

double dot(std::span<const double> a, std::span<const double> b);
/// Cosine similarity; zero vectors give 0.
double cosine(std::span<const double> a, std::span<const double> b);
void normalize(std::vector<double>& v);

struct PanoramaRequest {
  std::string prompt_text;
  int width = kDefaultPanoramaWidth;
  int height = kDefaultPanoramaHeight;
  int num_inference_steps = kDefaultInferenceSteps;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
};

void validate(const PanoramaRequest& req);

/// A provider result plus the provenance record of the call that produced it.
template <typename T>
struct Traced {
  T value;
  CallRecord call;
};

class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t now_ms() const = 0;
};

class SystemClock final : public Clock {
 public:
  std::int64_t now_ms() const override;
};

/// Always returns the same instant. Mock runs use it so provenance is
/// byte-reproducible.
class FixedClock final : public Clock {
 public:
  explicit FixedClock(std::int64_t ms = 0) : ms_(ms) {}
  std::int64_t now_ms() const override { return ms_; }

 private:
  std::int64_t ms_;
};

std::shared_ptr<Clock> system_clock();
std::shared_ptr<Clock> fixed_clock();

class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual std::string id() const = 0;
  /// Non-empty description of the image. Empty answers are kProtocol errors.
  Traced<std::string> caption(const Image& image);

 protected:
  virtual Traced<std::string> do_caption(const Image& image) = 0;
};

class ChatModel {
 public:
  virtual ~ChatModel() = default;
  virtual std::string id() const = 0;
  /// Validates the request before anything else happens.
  Traced<std::string> chat(const ChatRequest& req);

 protected:
  virtual Traced<std::string> do_chat(const ChatRequest& req) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string id() const = 0;
  /// Unit-norm vectors; the dimension is fixed by the first answer of the
  /// session and any later drift is a kProtocol error.
  Traced<EmbedResult> embed_text(std::string_view text);
  Traced<EmbedResult> embed_image(const Image& image);
  std::optional<std::size_t> session_dim() const;

 protected:
  virtual Traced<EmbedResult> do_embed_text(std::string_view text) = 0;
  virtual Traced<EmbedResult> do_embed_image(const Image& image) = 0;

 private:
  void check(const EmbedResult& r);
  mutable std::mutex mu_;
  std::optional<std::size_t> dim_;
};

class PanoramaGenerator {
 public:
  virtual ~PanoramaGenerator() = default;
  virtual std::string id() const = 0;
  /// Output is tagged source = generated with the request seed. A raster that
  /// is not 2:1 is resized to the requested dimensions with a warning.
  Traced<corpus::Panorama> generate_panorama(const PanoramaRequest& req);

 protected:
  virtual Traced<Image> do_generate(const PanoramaRequest& req) = 0;
};

struct ProviderSet {
  std::shared_ptr<Captioner> captioner;
  std::shared_ptr<ChatModel> chat;
  std::shared_ptr<Embedder> embedder;
  std::shared_ptr<PanoramaGenerator> panorama;
};

/// Times `fn` with `clock` and fills the timing fields of `rec`.
template <typename Fn>
auto timed(const Clock& clock, CallRecord& rec, Fn&& fn) {
  rec.started_at_ms = clock.now_ms();
  auto out = fn();
  rec.duration_ms = clock.now_ms() - rec.started_at_ms;
  return out;
}

}  // namespace vlnaug::providers
