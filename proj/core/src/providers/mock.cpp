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

#include "vlnaug/providers/mock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>

#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"
#include "vlnaug/labels.hpp"
#include "vlnaug/text.hpp"

namespace vlnaug::providers {
namespace {

constexpr std::array<std::string_view, 20> kObjectVocabulary = {
    "armchair",  "coffee table", "floor lamp", "bookshelf", "potted plant",
    "painting",  "rug",          "piano",      "fireplace", "mirror",
    "vase",      "ottoman",      "chandelier", "wardrobe",  "dining table",
    "staircase", "sideboard",    "cabinet",    "sculpture", "bench"};

// Action verbs and the synonym the mock substitutes.
constexpr std::array<std::pair<std::string_view, std::string_view>, 10> kVerbSynonyms = {{
    {"walk", "proceed"},
    {"go", "head"},
    {"turn", "veer"},
    {"exit", "leave"},
    {"enter", "step into"},
    {"stop", "halt"},
    {"wait", "pause"},
    {"continue", "keep going"},
    {"take", "follow"},
    {"climb", "ascend"},
}};

const std::set<std::string>& stop_words() {
  static const std::set<std::string> kWords = {
      "the",  "and",   "with", "for",  "from", "into", "onto", "that", "this", "there",
      "are",  "was",   "were", "has",  "have", "its",  "his",  "her",  "their", "then",
      "than", "past",  "near", "next", "some", "any",  "all",  "very", "also", "which",
      "while", "where", "room", "mock", "caption", "view", "scene", "image"};
  return kWords;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t chat_key(const ChatRequest& req) {
  Sha256 h;
  h.field(req.seed.value_or(0)).field(req.user_text);
  return std::stoull(h.hex().substr(0, 16), nullptr, 16);
}

std::string_view after_label(std::string_view line, std::string_view label) {
  return text::trim(line.substr(label.size()));
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Last line starting with `label`, label stripped.
std::optional<std::string> last_labeled(std::string_view prompt, std::string_view label) {
  std::optional<std::string> found;
  for (auto line : text::split_lines(prompt)) {
    line = text::trim(line);
    if (starts_with(line, label)) found = std::string(after_label(line, label));
  }
  return found;
}

std::string answer_landmarks(const ChatRequest& req) {
  const auto instr = last_labeled(req.user_text, labels::kInstruction).value_or("");
  const auto ws = text::words(instr);
  std::vector<std::string> found;
  for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
    const auto w = text::to_lower(ws[i]);
    if (w == "the" || w == "a" || w == "an") found.push_back(text::to_lower(ws[i + 1]));
  }
  if (found.empty() && !ws.empty()) found.push_back(text::to_lower(ws.back()));
  return std::string(labels::kLandmarks) + " " + text::join(found, ", ");
}

std::string answer_scene(const ChatRequest& req, std::uint64_t key) {
  const auto desc = last_labeled(req.user_text, labels::kSceneDescription).value_or("a room");
  Rng rng(key);
  const int n = rng.between(2, 4);
  std::vector<std::string> picked;
  while (static_cast<int>(picked.size()) < n) {
    std::string obj(kObjectVocabulary[rng.below(kObjectVocabulary.size())]);
    if (std::find(picked.begin(), picked.end(), obj) == picked.end()) picked.push_back(obj);
  }
  std::string with;
  for (std::size_t i = 0; i < picked.size(); ++i) {
    if (i > 0) with += (i + 1 == picked.size()) ? " and " : ", ";
    with += "a " + picked[i];
  }
  return std::string(labels::kAddedObjects) + " " + text::join(picked, ", ") + "\n" +
         std::string(labels::kRewrittenDescription) + " " + desc + ", with " + with;
}

std::string placeholder(std::size_t i) {
  return "qqlandmark" + std::string(1, static_cast<char>('a' + i % 26)) + std::string(i / 26, 'z');
}

std::string answer_instruction(const ChatRequest& req) {
  const auto lines = text::split_lines(req.user_text);
  std::optional<std::size_t> orig_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (starts_with(text::trim(lines[i]), labels::kOriginalInstruction)) orig_line = i;
  }
  if (!orig_line) return std::string(labels::kRewrittenInstruction) + " proceed forward and halt";
  std::string out(after_label(text::trim(lines[*orig_line]), labels::kOriginalInstruction));

  // Step lines directly above the final original-instruction line.
  std::vector<std::pair<std::string, std::string>> steps;
  for (std::size_t i = *orig_line; i-- > 0;) {
    const auto line = text::trim(lines[i]);
    if (!starts_with(line, labels::kStep)) break;
    const auto lm = line.find(labels::kOriginalLandmark);
    const auto bar = line.find('|');
    const auto obs = line.find(labels::kNewObservation);
    if (lm == line.npos || bar == line.npos || obs == line.npos) break;
    steps.emplace_back(
        std::string(text::trim(line.substr(lm + labels::kOriginalLandmark.size(),
                                           bar - lm - labels::kOriginalLandmark.size()))),
        std::string(text::trim(line.substr(obs + labels::kNewObservation.size()))));
  }
  std::reverse(steps.begin(), steps.end());

  // Landmarks go to placeholder words first so that a new noun is never
  // rewritten again by a later landmark or verb.
  std::set<std::string> replaced;
  std::vector<std::string_view> picks;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    const auto& [landmark, observation] = steps[t];
    if (landmark.empty() || !replaced.insert(text::to_lower(landmark)).second) continue;
    Sha256 h;
    h.field(req.seed.value_or(0)).field(observation).field(static_cast<std::uint64_t>(t));
    const auto pick = std::stoull(h.hex().substr(0, 16), nullptr, 16) % kObjectVocabulary.size();
    out = text::replace_phrase(out, landmark, placeholder(picks.size()));
    picks.push_back(kObjectVocabulary[pick]);
  }
  for (const auto& [verb, synonym] : kVerbSynonyms) out = text::replace_phrase(out, verb, synonym);
  for (std::size_t i = 0; i < picks.size(); ++i) out = text::replace_phrase(out, placeholder(i), picks[i]);
  return std::string(labels::kRewrittenInstruction) + " " + out;
}

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

}  // namespace

std::vector<double> seeded_unit_vector(std::uint64_t seed, std::size_t dim) {
  Rng rng(seed);
  std::vector<double> v(dim);
  for (auto& x : v) x = rng.normal();
  normalize(v);
  return v;
}

std::vector<std::string> prompt_nouns(std::string_view prompt) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& w : text::words(prompt)) {
    auto lw = text::to_lower(w);
    if (lw.size() < 3 || stop_words().contains(lw)) continue;
    if (seen.insert(lw).second) out.push_back(std::move(lw));
  }
  return out;
}

MockCaptioner::MockCaptioner(std::shared_ptr<Clock> clock) : clock_(std::move(clock)) {}

Traced<std::string> MockCaptioner::do_caption(const Image& image) {
  CallRecord rec{"caption", id(), {}, 1, 0, 0};
  const auto digest = image_digest(image);
  rec.params = {{"image_sha256", digest}, {"width", image.width}, {"height", image.height}};
  auto text = timed(*clock_, rec, [&] { return "mock-caption-" + digest.substr(0, 8); });
  return {std::move(text), std::move(rec)};
}

MockChat::MockChat(MockChatOptions options, std::shared_ptr<Clock> clock)
    : options_(std::move(options)), clock_(std::move(clock)) {}

Traced<std::string> MockChat::do_chat(const ChatRequest& req) {
  CallRecord rec{"chat", id(), {}, 1, 0, 0};
  rec.params = {{"temperature", req.temperature},
                {"presence_penalty", req.presence_penalty},
                {"max_tokens", req.max_tokens},
                {"seed", req.seed ? nlohmann::json(*req.seed) : nlohmann::json(nullptr)},
                {"prompt_sha256", sha256_hex(req.system_text + "\n" + req.user_text)}};
  auto answer = timed(*clock_, rec, [&]() -> std::string {
    const auto key = chat_key(req);
    for (const auto& trigger : options_.malformed_if_contains) {
      if (contains(req.user_text, trigger)) return "I am unable to help with that. " + hex16(key);
    }
    if (contains(req.user_text, labels::kRewrittenInstruction)) return answer_instruction(req);
    if (contains(req.user_text, labels::kLandmarks) && contains(req.user_text, labels::kInstruction)) {
      return answer_landmarks(req);
    }
    if (contains(req.user_text, labels::kRewrittenDescription)) return answer_scene(req, key);
    return "mock-chat-" + hex16(key);
  });
  return {std::move(answer), std::move(rec)};
}

MockEmbedder::MockEmbedder(std::size_t dim, std::uint64_t seed, std::shared_ptr<Clock> clock)
    : dim_(dim), seed_(seed), clock_(std::move(clock)) {
  require(dim_ > 0, ErrorKind::kConfig, "mock embedder dimension must be positive");
}

std::size_t MockEmbedder::register_landmark(const std::string& label) {
  std::lock_guard lock(mu_);
  auto it = labels_.find(label);
  if (it != labels_.end()) return it->second;
  require(labels_.size() < dim_, ErrorKind::kConfig,
          "mock embedder: more landmarks than dimensions");
  const std::size_t idx = labels_.size();
  labels_.emplace(label, idx);
  return idx;
}

void MockEmbedder::tag_image(const Image& image, const std::string& label) {
  register_landmark(label);
  std::lock_guard lock(mu_);
  image_tags_[image_digest(image)] = label;
}

EmbedResult MockEmbedder::one_hot(std::size_t index) const {
  EmbedResult r;
  r.vector.assign(dim_, 0.0);
  r.vector[index] = 1.0;
  return r;
}

EmbedResult MockEmbedder::hashed(std::string_view domain, std::string_view content) const {
  Sha256 h;
  h.field(seed_).field(domain).field(content);
  return {seeded_unit_vector(std::stoull(h.hex().substr(0, 16), nullptr, 16), dim_)};
}

Traced<EmbedResult> MockEmbedder::do_embed_text(std::string_view text) {
  CallRecord rec{"embed_text", id(), {{"text_sha256", sha256_hex(text)}}, 1, 0, 0};
  auto result = timed(*clock_, rec, [&] {
    std::lock_guard lock(mu_);
    auto it = labels_.find(std::string(text));
    return it != labels_.end() ? one_hot(it->second) : hashed("text", text);
  });
  return {std::move(result), std::move(rec)};
}

Traced<EmbedResult> MockEmbedder::do_embed_image(const Image& image) {
  const auto digest = image_digest(image);
  CallRecord rec{"embed_image", id(), {{"image_sha256", digest}}, 1, 0, 0};
  auto result = timed(*clock_, rec, [&] {
    std::lock_guard lock(mu_);
    auto tag = image_tags_.find(digest);
    if (tag != image_tags_.end()) return one_hot(labels_.at(tag->second));
    return hashed("image", digest);
  });
  return {std::move(result), std::move(rec)};
}

MockPanoramaGenerator::MockPanoramaGenerator(std::shared_ptr<Clock> clock)
    : clock_(std::move(clock)) {}

Traced<Image> MockPanoramaGenerator::do_generate(const PanoramaRequest& req) {
  CallRecord rec{"panorama", id(), req.to_json(), 1, 0, 0};
  rec.params.erase("prompt");
  rec.params["prompt_sha256"] = sha256_hex(req.prompt_text);
  auto img = timed(*clock_, rec, [&] {
    Sha256 h;
    h.field(req.seed.value_or(0)).field(req.prompt_text);
    Rng rng(std::stoull(h.hex().substr(0, 16), nullptr, 16));
    Image out(req.width, req.height);
    std::array<double, 3> left{}, right{};
    for (int c = 0; c < 3; ++c) {
      left[static_cast<std::size_t>(c)] = 40.0 + 160.0 * rng.unit();
      right[static_cast<std::size_t>(c)] = 40.0 + 160.0 * rng.unit();
    }
    for (int y = 0; y < out.height; ++y) {
      const double shade = 0.6 + 0.4 * std::sin(3.14159265358979 * (y + 0.5) / out.height);
      for (int x = 0; x < out.width; ++x) {
        const double t = static_cast<double>(x) / out.width;
        auto* px = out.at(x, y);
        for (std::size_t c = 0; c < 3; ++c) {
          px[c] = static_cast<std::uint8_t>(std::lround(shade * (left[c] * (1 - t) + right[c] * t)));
        }
      }
    }
    // One block per noun; its color is the noun's label.
    const int bw = std::max(1, out.width / 16);
    const int bh = std::max(1, out.height / 6);
    for (const auto& noun : prompt_nouns(req.prompt_text)) {
      Rng place(derive_seed(req.seed.value_or(0), noun));
      const auto color = stable_hash64(noun);
      const int x0 = static_cast<int>(place.below(static_cast<std::uint64_t>(out.width)));
      const int y0 = out.height / 3 + static_cast<int>(place.below(
                                          static_cast<std::uint64_t>(std::max(1, out.height / 3))));
      for (int y = y0; y < std::min(out.height, y0 + bh); ++y) {
        for (int dx = 0; dx < bw; ++dx) {
          auto* px = out.at((x0 + dx) % out.width, y);
          px[0] = static_cast<std::uint8_t>(color);
          px[1] = static_cast<std::uint8_t>(color >> 8);
          px[2] = static_cast<std::uint8_t>(color >> 16);
        }
      }
    }
    return out;
  });
  return {std::move(img), std::move(rec)};
}

ProviderSet make_mock_providers(MockChatOptions chat_options, std::size_t embed_dim,
                                std::uint64_t embed_seed) {
  return {std::make_shared<MockCaptioner>(), std::make_shared<MockChat>(std::move(chat_options)),
          std::make_shared<MockEmbedder>(embed_dim, embed_seed),
          std::make_shared<MockPanoramaGenerator>()};
}

}  // namespace vlnaug::providers
