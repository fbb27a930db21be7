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

// Deterministic stand-ins for every provider role. Each is a pure function of
// its inputs and seed, so runs built on them are byte-reproducible.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "vlnaug/providers/types.hpp"

namespace vlnaug::providers {

/// "mock-caption-<first 8 hex of image_digest>".
class MockCaptioner final : public Captioner {
 public:
  explicit MockCaptioner(std::shared_ptr<Clock> clock = fixed_clock());
  std::string id() const override { return "mock-caption/v1"; }

 protected:
  Traced<std::string> do_caption(const Image& image) override;

 private:
  std::shared_ptr<Clock> clock_;
};

struct MockChatOptions {
  /// Prompts containing any of these substrings get an answer that follows
  /// none of the response grammars (parse-failure injection).
  std::vector<std::string> malformed_if_contains;
};

/// Recognizes the three prompt kinds by their response labels and answers in
/// the matching grammar:
///  - landmark extraction: nouns following "the"/"a"/"an" in the instruction;
///  - scene rewriting: 2-4 objects from a fixed vocabulary, keyed by
///    hash(seed, prompt), appended to the input description;
///  - instruction rewriting: each original landmark replaced by a vocabulary
///    noun keyed by its new observation, action verbs swapped for synonyms.
/// Anything else yields "mock-chat-<hash>".
class MockChat final : public ChatModel {
 public:
  explicit MockChat(MockChatOptions options = {}, std::shared_ptr<Clock> clock = fixed_clock());
  std::string id() const override { return "mock-chat/v1"; }

 protected:
  Traced<std::string> do_chat(const ChatRequest& req) override;

 private:
  MockChatOptions options_;
  std::shared_ptr<Clock> clock_;
};

/// Registered landmark labels embed as one-hot basis vectors (registration
/// order); images tagged with a label embed as that label's basis vector.
/// Everything else maps to a seeded unit vector derived from its content.
class MockEmbedder final : public Embedder {
 public:
  explicit MockEmbedder(std::size_t dim = 64, std::uint64_t seed = 0,
                        std::shared_ptr<Clock> clock = fixed_clock());
  std::string id() const override { return "mock-embed/v1"; }

  std::size_t register_landmark(const std::string& label);
  void tag_image(const Image& image, const std::string& label);
  std::size_t dim() const { return dim_; }

 protected:
  Traced<EmbedResult> do_embed_text(std::string_view text) override;
  Traced<EmbedResult> do_embed_image(const Image& image) override;

 private:
  EmbedResult one_hot(std::size_t index) const;
  EmbedResult hashed(std::string_view domain, std::string_view content) const;

  std::size_t dim_;
  std::uint64_t seed_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mu_;
  std::map<std::string, std::size_t> labels_;
  std::map<std::string, std::string> image_tags_;  // image digest -> label
};

/// Seeded gradient background plus one colored block per prompt noun.
class MockPanoramaGenerator final : public PanoramaGenerator {
 public:
  explicit MockPanoramaGenerator(std::shared_ptr<Clock> clock = fixed_clock());
  std::string id() const override { return "mock-t2i/v1"; }

 protected:
  Traced<Image> do_generate(const PanoramaRequest& req) override;

 private:
  std::shared_ptr<Clock> clock_;
};

/// Seeded unit vector; shared by the mock embedder and test oracles.
std::vector<double> seeded_unit_vector(std::uint64_t seed, std::size_t dim);

/// Content words of a prompt (alphabetic, >= 3 letters, not stop words),
/// lower-cased and deduplicated in order of appearance.
std::vector<std::string> prompt_nouns(std::string_view prompt);

ProviderSet make_mock_providers(MockChatOptions chat_options = {}, std::size_t embed_dim = 64,
                                std::uint64_t embed_seed = 0);

}  // namespace vlnaug::providers
