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

#include "vlnaug/schedule.hpp"

#include <cmath>
#include <map>
#include <set>

#include "vlnaug/corpus.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"
#include "vlnaug/store.hpp"
#include "vlnaug/text.hpp"

namespace vlnaug::schedule {
namespace {

using nlohmann::json;

// Fisher-Yates on our own RNG; std::shuffle differs between standard
// libraries.
template <typename T>
void shuffle(std::vector<T>& v, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

void require_positive_epochs(int epochs) {
  require(epochs >= 1, ErrorKind::kConfig, "schedule: epochs must be >= 1");
}

json item_json(const ManifestEntry& e) {
  return {{"pair_id", e.item.pair_id},
          {"origin", to_string(e.item.origin)},
          {"observation_ref", e.item.observation_ref},
          {"instruction_ref", e.item.instruction_ref},
          {"epoch", e.epoch}};
}

}  // namespace

std::string_view to_string(Stage stage) { return stage == Stage::kMix ? "mix" : "focus"; }
std::string_view to_string(Origin origin) {
  return origin == Origin::kOriginal ? "original" : "rewritten";
}

Stage parse_stage(std::string_view name) {
  if (name == "mix") return Stage::kMix;
  if (name == "focus") return Stage::kFocus;
  fail(ErrorKind::kParse, "unknown stage '" + std::string(name) + "'");
}

Origin parse_origin(std::string_view name) {
  if (name == "original") return Origin::kOriginal;
  if (name == "rewritten") return Origin::kRewritten;
  fail(ErrorKind::kParse, "unknown origin '" + std::string(name) + "'");
}

std::uint64_t cropmix_seed(std::uint64_t manifest_seed, const std::string& pair_id) {
  return derive_seed(manifest_seed, "cropmix:" + pair_id);
}

MixRatio parse_ratio(std::string_view text) {
  const auto parts = text::split_trimmed(text, ':');
  require(parts.size() == 2, ErrorKind::kConfig, "mix ratio must look like '1:3'");
  MixRatio r;
  try {
    r.original_parts = std::stoi(parts[0]);
    r.rewritten_parts = std::stoi(parts[1]);
  } catch (const std::exception&) {
    fail(ErrorKind::kConfig, "mix ratio must look like '1:3'");
  }
  require(r.original_parts > 0 && r.rewritten_parts >= 0, ErrorKind::kConfig,
          "mix ratio: original part must be positive, rewritten part non-negative");
  return r;
}

StageManifest build_stage1(const std::vector<TrainingItem>& originals,
                           const std::vector<TrainingItem>& rewritten, MixRatio ratio,
                           std::uint64_t seed, const CropMixConfig& cropmix, int epochs,
                           const TrainerHints& hints) {
  require_positive_epochs(epochs);
  require(ratio.original_parts > 0 && ratio.rewritten_parts >= 0, ErrorKind::kConfig,
          "mix ratio: original part must be positive, rewritten part non-negative");
  require(!originals.empty(), ErrorKind::kPrecondition, "build_stage1: no original items");
  for (const auto& it : originals) {
    require(it.origin == Origin::kOriginal, ErrorKind::kPrecondition,
            "build_stage1: rewritten item '" + it.pair_id + "' passed as original");
  }
  for (const auto& it : rewritten) {
    require(it.origin == Origin::kRewritten, ErrorKind::kPrecondition,
            "build_stage1: original item '" + it.pair_id + "' passed as rewritten");
  }
  const auto per_epoch = static_cast<std::size_t>(std::llround(
      static_cast<double>(originals.size()) * ratio.rewritten_parts / ratio.original_parts));
  require(per_epoch == 0 || !rewritten.empty(), ErrorKind::kConfig,
          "build_stage1: mix ratio needs rewritten items but none were given");
  require(!cropmix.enabled || per_epoch == 0 || static_cast<bool>(cropmix.hook), ErrorKind::kConfig,
          "build_stage1: crop-mixing enabled without a crop-mix hook");

  StageManifest m;
  m.stage = Stage::kMix;
  m.mix_ratio = ratio;
  m.seed = seed;
  m.epochs = epochs;
  m.hints = hints;
  m.cropmix = cropmix.enabled;

  std::vector<std::size_t> order(rewritten.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  shuffle(order, derive_seed(seed, "rewritten-order"));

  std::map<std::size_t, TrainingItem> mixed;  // rewritten index -> crop-mixed item
  auto resolve = [&](std::size_t idx) -> const TrainingItem& {
    if (!cropmix.enabled) return rewritten[idx];
    auto it = mixed.find(idx);
    if (it == mixed.end()) {
      auto item = rewritten[idx];
      item.observation_ref = cropmix.hook(item, cropmix_seed(seed, item.pair_id));
      it = mixed.emplace(idx, std::move(item)).first;
    }
    return it->second;
  };

  std::size_t cursor = 0;
  for (int e = 0; e < epochs; ++e) {
    std::vector<ManifestEntry> epoch;
    for (const auto& o : originals) epoch.push_back({o, e});
    for (std::size_t i = 0; i < per_epoch; ++i, ++cursor) {
      epoch.push_back({resolve(order[cursor % order.size()]), e});
    }
    shuffle(epoch, derive_seed(seed, "epoch", static_cast<std::uint64_t>(e)));
    m.entries.insert(m.entries.end(), epoch.begin(), epoch.end());
  }
  validate(m);
  return m;
}

StageManifest build_stage2(const std::vector<TrainingItem>& originals, std::uint64_t seed,
                           const ResumeMarker& resume, int epochs, const TrainerHints& hints) {
  require_positive_epochs(epochs);
  require(!originals.empty(), ErrorKind::kPrecondition, "build_stage2: no original items");
  for (const auto& it : originals) {
    require(it.origin == Origin::kOriginal, ErrorKind::kPrecondition,
            "build_stage2: rewritten item '" + it.pair_id + "' is not allowed in the focus stage");
  }
  StageManifest m;
  m.stage = Stage::kFocus;
  m.mix_ratio = {1, 0};
  m.seed = seed;
  m.epochs = epochs;
  m.hints = hints;
  m.resume = resume;
  for (int e = 0; e < epochs; ++e) {
    std::vector<ManifestEntry> epoch;
    for (const auto& o : originals) epoch.push_back({o, e});
    shuffle(epoch, derive_seed(seed, "epoch", static_cast<std::uint64_t>(e)));
    m.entries.insert(m.entries.end(), epoch.begin(), epoch.end());
  }
  validate(m);
  return m;
}

void validate(const StageManifest& m) {
  std::map<int, std::pair<long, long>> counts;  // epoch -> (original, rewritten)
  for (const auto& e : m.entries) {
    require(e.epoch >= 0 && e.epoch < m.epochs, ErrorKind::kValidation,
            "manifest: entry epoch out of range");
    auto& c = counts[e.epoch];
    (e.item.origin == Origin::kOriginal ? c.first : c.second) += 1;
  }
  if (m.stage == Stage::kFocus) {
    require(m.resume.has_value(), ErrorKind::kValidation, "focus manifest: missing resume marker");
    for (const auto& [epoch, c] : counts) {
      require(c.second == 0, ErrorKind::kValidation,
              "focus manifest: epoch " + std::to_string(epoch) + " holds rewritten entries");
    }
    return;
  }
  const long o = m.mix_ratio.original_parts;
  const long r = m.mix_ratio.rewritten_parts;
  for (const auto& [epoch, c] : counts) {
    require(std::labs(c.second * o - c.first * r) <= o, ErrorKind::kValidation,
            "mix manifest: epoch " + std::to_string(epoch) + " breaks the " + std::to_string(o) +
                ":" + std::to_string(r) + " ratio");
  }
}

nlohmann::json header_json(const StageManifest& m) {
  json h = {{"stage", to_string(m.stage)},
            {"mix_ratio", {m.mix_ratio.original_parts, m.mix_ratio.rewritten_parts}},
            {"seed", m.seed},
            {"epochs", m.epochs},
            {"loss_stage", m.stage == Stage::kMix ? "stage1" : "stage2"},
            {"cropmix", m.cropmix},
            {"entries", m.entries.size()},
            {"hints",
             {{"max_iterations", m.hints.max_iterations},
              {"batch_size", m.hints.batch_size},
              {"learning_rate", m.hints.learning_rate}}}};
  if (m.resume) {
    h["resume"] = {{"stage1_best_checkpoint_ref", m.resume->stage1_best_checkpoint_ref},
                   {"note", m.resume->note}};
  }
  return h;
}

std::string to_jsonl(const StageManifest& m) {
  std::string out = header_json(m).dump() + "\n";
  for (const auto& e : m.entries) out += item_json(e).dump() + "\n";
  return out;
}

StageManifest from_jsonl(std::string_view text) {
  const auto lines = text::split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && text::trim(lines[i]).empty()) ++i;
  require(i < lines.size(), ErrorKind::kParse, "stage manifest: missing header");
  StageManifest m;
  try {
    const auto h = json::parse(lines[i]);
    m.stage = parse_stage(h.at("stage").get<std::string>());
    m.mix_ratio = {h.at("mix_ratio").at(0).get<int>(), h.at("mix_ratio").at(1).get<int>()};
    m.seed = h.at("seed").get<std::uint64_t>();
    m.epochs = h.at("epochs").get<int>();
    m.cropmix = h.at("cropmix").get<bool>();
    const auto& hints = h.at("hints");
    m.hints = {hints.at("max_iterations").get<int>(), hints.at("batch_size").get<int>(),
               hints.at("learning_rate").get<double>()};
    if (h.contains("resume")) {
      m.resume = ResumeMarker{h["resume"].at("stage1_best_checkpoint_ref").get<std::string>(),
                              h["resume"].value("note", "")};
    }
    for (++i; i < lines.size(); ++i) {
      if (text::trim(lines[i]).empty()) continue;
      const auto j = json::parse(lines[i]);
      m.entries.push_back({{j.at("pair_id").get<std::string>(),
                            parse_origin(j.at("origin").get<std::string>()),
                            j.at("observation_ref").get<std::string>(),
                            j.at("instruction_ref").get<std::string>()},
                           j.at("epoch").get<int>()});
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, "stage manifest line " + std::to_string(i + 1) + ": " + e.what());
  }
  return m;
}

void write_stage_manifest(const std::filesystem::path& path, const StageManifest& manifest) {
  corpus::write_file_atomic(path, to_jsonl(manifest));
}

StageManifest read_stage_manifest(const std::filesystem::path& path) {
  return from_jsonl(corpus::read_text_file(path));
}

}  // namespace vlnaug::schedule
