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

// Run configuration, read from a JSON file. Every field has a default except
// the dataset root and the output root.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "vlnaug/corpus.hpp"
#include "vlnaug/cropmix.hpp"
#include "vlnaug/providers/factory.hpp"
#include "vlnaug/rewrite.hpp"
#include "vlnaug/schedule.hpp"

namespace vlnaug {

struct StageToggles {
  bool augment = true;
  bool cropmix = true;
  bool schedule = true;
};

struct RunConfig {
  std::filesystem::path dataset_root;
  corpus::Split split = corpus::Split::kTrain;
  corpus::Flavor flavor = corpus::Flavor::kR2R;
  std::filesystem::path output_root;
  std::optional<std::uint64_t> seed;
  int augmentations_per_pair = 3;
  int workers = 1;
  std::optional<std::size_t> limit;  // first N pairs only

  providers::ProviderConfigs providers;
  rewrite::ChatParams chat;
  int panorama_width = providers::kDefaultPanoramaWidth;
  int panorama_height = providers::kDefaultPanoramaHeight;
  int inference_steps = providers::kDefaultInferenceSteps;
  double view_fov_deg = 60.0;
  int view_size = 224;

  int max_requeries = 2;
  std::size_t max_instruction_words = rewrite::kDefaultMaxInstructionWords;
  std::optional<std::filesystem::path> scene_template;
  std::optional<std::filesystem::path> instruction_template;

  StageToggles stages;
  schedule::MixRatio mix_ratio;
  int schedule_epochs = 1;
  schedule::TrainerHints hints;
  schedule::ResumeMarker resume;
  cropmix::CropMixOptions cropmix;

  /// The configured seed, 0 when unset (only allowed without mock providers).
  std::uint64_t seed_value() const;
};

/// kConfig on unknown keys, bad types or broken invariants.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json config_to_json(const RunConfig& config);
RunConfig load_config(const std::filesystem::path& path);
/// augmentations_per_pair >= 1, workers >= 1, a seed whenever a mock
/// provider is selected, 2:1 panorama size.
void validate(const RunConfig& config);

}  // namespace vlnaug
