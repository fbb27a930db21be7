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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/provenance.hpp"
#include "vlnaug/store.hpp"

namespace vlnaug::corpus {

/// Everything produced while rewriting one trajectory variant. Per-step
/// vectors are indexed by navigation step and all have length T.
struct RewriteBundle {
  std::string pair_id;         // augmented pair id, "<path_id>#aug<variant>"
  std::string source_path_id;  // original trajectory
  std::string scan_id;
  int variant = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> viewpoints;
  int instruction_index = 0;
  std::string original_instruction;

  std::vector<int> gt_view_indices;
  std::vector<std::string> scene_descriptions;          // captions of the originals
  std::vector<std::string> rewritten_descriptions;
  std::vector<std::vector<std::string>> added_objects;  // audit only
  std::vector<std::string> panorama_refs;               // generated panoramas, png sha256
  std::vector<std::string> new_view_refs;               // gt view of each new panorama
  std::vector<std::string> landmarks;                   // extracted from the instruction
  std::vector<std::string> grounded_landmarks;          // one per step
  std::vector<double> grounding_scores;
  std::vector<std::string> new_descriptions;            // captions of new_view_refs
  std::string rewritten_instruction;

  std::vector<CallRecord> provenance;

  std::size_t steps() const { return viewpoints.size(); }
  friend bool operator==(const RewriteBundle&, const RewriteBundle&) = default;
};

/// Throws kValidation when per-step lists disagree in length or the
/// rewritten instruction is empty.
void validate_bundle(const RewriteBundle& bundle);

nlohmann::json bundle_to_json(const RewriteBundle& bundle);
RewriteBundle bundle_from_json(const nlohmann::json& j);

/// Validates, then writes the bundle as a content-addressed JSON blob.
/// Storing an identical bundle again yields the identical entry.
ManifestEntry store_bundle(const RewriteBundle& bundle, ArtifactStore& store);
RewriteBundle load_bundle(const ArtifactStore& store, const ManifestEntry& entry);

}  // namespace vlnaug::corpus
