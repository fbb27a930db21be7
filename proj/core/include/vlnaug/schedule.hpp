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

// Two-stage training manifests: stage 1 mixes original and (crop-mixed)
// rewritten items at a fixed ratio, stage 2 lists original items only and
// carries a slot for the stage-1 checkpoint the trainer resumes from.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/cropmix.hpp"

namespace vlnaug::schedule {

enum class Stage { kMix, kFocus };
enum class Origin { kOriginal, kRewritten };

std::string_view to_string(Stage stage);
std::string_view to_string(Origin origin);
Stage parse_stage(std::string_view name);
Origin parse_origin(std::string_view name);

/// One trajectory-instruction item. Refs are content addresses (or dataset
/// locators for original observations); pixels are never embedded.
struct TrainingItem {
  std::string pair_id;
  Origin origin = Origin::kOriginal;
  std::string observation_ref;
  std::string instruction_ref;
  friend bool operator==(const TrainingItem&, const TrainingItem&) = default;
};

struct ManifestEntry {
  TrainingItem item;
  int epoch = 0;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct MixRatio {
  int original_parts = 1;
  int rewritten_parts = 3;
  friend bool operator==(const MixRatio&, const MixRatio&) = default;
};

/// Parses "1:3".
MixRatio parse_ratio(std::string_view text);

struct TrainerHints {
  int max_iterations = 20000;
  int batch_size = 8;
  double learning_rate = 1e-5;
  friend bool operator==(const TrainerHints&, const TrainerHints&) = default;
};

struct ResumeMarker {
  std::string stage1_best_checkpoint_ref = "stage1:best";
  std::string note = "initialize stage 2 from the best stage-1 checkpoint";
  friend bool operator==(const ResumeMarker&, const ResumeMarker&) = default;
};

struct StageManifest {
  Stage stage = Stage::kMix;
  MixRatio mix_ratio;
  std::uint64_t seed = 0;
  int epochs = 1;
  TrainerHints hints;
  bool cropmix = false;
  std::optional<ResumeMarker> resume;
  std::vector<ManifestEntry> entries;
};

/// Replaces a rewritten item's observation with a crop-mixed one and returns
/// the new observation ref. Called once per distinct rewritten item with a
/// seed derived from the manifest seed.
using CropMixHook = std::function<std::string(const TrainingItem& item, std::uint64_t seed)>;

/// Seed handed to the crop-mix hook for one rewritten item.
std::uint64_t cropmix_seed(std::uint64_t manifest_seed, const std::string& pair_id);

struct CropMixConfig {
  bool enabled = true;
  CropMixHook hook;
};

/// Each epoch holds every original plus round(n_o * r / o) rewritten items
/// drawn from a seeded permutation, cycling when the rewritten set is
/// smaller; the epoch is then shuffled with an epoch-indexed seed.
StageManifest build_stage1(const std::vector<TrainingItem>& originals,
                           const std::vector<TrainingItem>& rewritten, MixRatio ratio,
                           std::uint64_t seed, const CropMixConfig& cropmix, int epochs = 1,
                           const TrainerHints& hints = {});

/// Originals only, shuffled per epoch; rewritten items are rejected.
StageManifest build_stage2(const std::vector<TrainingItem>& originals, std::uint64_t seed,
                           const ResumeMarker& resume = {}, int epochs = 1,
                           const TrainerHints& hints = {});

/// kValidation when an invariant fails: focus manifests must be pure and
/// carry a resume marker; mix epochs must respect the ratio within +-1.
void validate(const StageManifest& manifest);

nlohmann::json header_json(const StageManifest& manifest);
/// Header line followed by one line per entry.
std::string to_jsonl(const StageManifest& manifest);
StageManifest from_jsonl(std::string_view text);
void write_stage_manifest(const std::filesystem::path& path, const StageManifest& manifest);
StageManifest read_stage_manifest(const std::filesystem::path& path);

}  // namespace vlnaug::schedule
