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

// End-to-end augmentation run and manifest materialization.
//
// Run root layout:
//   run.json             effective configuration and its fingerprint
//   objects/             content-addressed artifacts (bundles, PNGs, texts)
//   cache/<role>/        provider-call cache, one JSON file per request
//   checkpoints/         one file per finished (pair, variant)
//   augment.jsonl        bundle manifest, input order
//   drops.jsonl          dropped variants with reason and the calls made
//   run_stats.json       live calls and cache hits of the latest run
//   report.json          summary (see report.hpp)
//   cropmix.jsonl, stage1.jsonl, stage2.jsonl

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/bundle.hpp"
#include "vlnaug/config.hpp"
#include "vlnaug/providers/gateway.hpp"
#include "vlnaug/providers/types.hpp"
#include "vlnaug/schedule.hpp"
#include "vlnaug/store.hpp"

namespace vlnaug::pipeline {

/// Per-variant stages, in execution order.
enum class Stage {
  kCaption,
  kSceneRewrite,
  kPanorama,
  kDiscretize,
  kLandmarks,
  kGround,
  kNewCaption,
  kInstruction,
  kPersist,
};
inline constexpr int kStageCount = 9;

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view name);

struct DropRecord {
  std::string pair_id;
  std::string source_path_id;
  int variant = 0;
  Stage stage = Stage::kCaption;
  std::string reason;  // parse | length | provider | protocol | validation | domain | metric
  std::string message;
  std::vector<CallRecord> calls;

  nlohmann::json to_json() const;
  static DropRecord from_json(const nlohmann::json& j);
};

/// Live provider calls versus cache replays, per role.
struct CacheCounts {
  std::map<std::string, long> live;
  std::map<std::string, long> hits;
  nlohmann::json to_json() const;
  static CacheCounts from_json(const nlohmann::json& j);
  long total_live() const;
};

class CacheStats {
 public:
  void record(const std::string& role, bool hit);
  CacheCounts snapshot() const;

 private:
  mutable std::mutex mu_;
  CacheCounts counts_;
};

/// Wraps every role with a persistent request cache under `cache_dir`. A
/// hit replays the stored result together with its original call record.
providers::ProviderSet make_cached_providers(const providers::ProviderSet& inner,
                                             const std::filesystem::path& cache_dir,
                                             std::shared_ptr<corpus::ArtifactStore> store,
                                             std::shared_ptr<CacheStats> stats);

struct PipelineHooks {
  /// Runs after each stage of each variant. Throwing from here aborts the
  /// run as if the process had been killed at that boundary.
  std::function<void(const std::string& pair_id, Stage stage)> on_stage_complete;
};

struct PipelineOptions {
  bool resume = false;  // honor checkpoints left by an earlier run
  std::optional<providers::ProviderSet> providers;  // overrides config.providers
  std::shared_ptr<providers::Transport> transport;  // for gateway roles
  providers::Sleeper sleeper;
  PipelineHooks hooks;
};

/// Stable id of an augmented pair.
std::string augmented_pair_id(const std::string& path_id, int variant);

/// Rewrites every (pair, variant) and persists bundles, drops, stats and the
/// report; then builds the crop-mix and stage manifests when enabled.
/// Per-variant failures are dropped; config, I/O and permanent provider
/// errors abort. Returns the report document.
nlohmann::json run_pipeline(const RunConfig& config, const PipelineOptions& options = {});

/// Crop-mixes the generated panoramas of every bundle in the run (pool = the
/// bundle's own panoramas, one output per step) and writes cropmix.jsonl.
std::vector<corpus::ManifestEntry> run_cropmix(const RunConfig& config);

/// Writes stage1.jsonl and stage2.jsonl from the dataset and the run's
/// bundles.
std::pair<schedule::StageManifest, schedule::StageManifest> build_manifests(const RunConfig& config);

/// The per-bundle crop-mix used by run_cropmix and the stage-1 hook: stores
/// the outputs and an observation record, returns the record's entry.
corpus::ManifestEntry cropmix_bundle(corpus::ArtifactStore& store, const corpus::RewriteBundle& bundle,
                                     std::uint64_t seed, const cropmix::CropMixOptions& options);

}  // namespace vlnaug::pipeline
