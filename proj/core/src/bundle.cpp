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

#include "vlnaug/bundle.hpp"

#include "vlnaug/error.hpp"

namespace vlnaug {

nlohmann::json CallRecord::to_json() const {
  return {{"role", role},
          {"provider_id", provider_id},
          {"params", params},
          {"attempts", attempts},
          {"started_at_ms", started_at_ms},
          {"duration_ms", duration_ms}};
}

CallRecord CallRecord::from_json(const nlohmann::json& j) {
  CallRecord r;
  r.role = j.at("role").get<std::string>();
  r.provider_id = j.at("provider_id").get<std::string>();
  r.params = j.value("params", nlohmann::json::object());
  r.attempts = j.at("attempts").get<int>();
  r.started_at_ms = j.value("started_at_ms", std::int64_t{0});
  r.duration_ms = j.value("duration_ms", std::int64_t{0});
  return r;
}

}  // namespace vlnaug

namespace vlnaug::corpus {

using nlohmann::json;

void validate_bundle(const RewriteBundle& b) {
  const std::size_t T = b.viewpoints.size();
  const std::string where = "bundle " + b.pair_id;
  require(T >= 1, ErrorKind::kValidation, where + ": no steps");
  auto check = [&](std::size_t n, const char* name) {
    require(n == T, ErrorKind::kValidation,
            where + ": " + name + " has " + std::to_string(n) + " entries, expected " +
                std::to_string(T));
  };
  check(b.gt_view_indices.size(), "gt_view_indices");
  check(b.scene_descriptions.size(), "scene_descriptions");
  check(b.rewritten_descriptions.size(), "rewritten_descriptions");
  check(b.added_objects.size(), "added_objects");
  check(b.panorama_refs.size(), "panorama_refs");
  check(b.new_view_refs.size(), "new_view_refs");
  check(b.grounded_landmarks.size(), "grounded_landmarks");
  check(b.grounding_scores.size(), "grounding_scores");
  check(b.new_descriptions.size(), "new_descriptions");
  require(!b.rewritten_instruction.empty(), ErrorKind::kValidation,
          where + ": rewritten instruction is empty");
}

json bundle_to_json(const RewriteBundle& b) {
  json calls = json::array();
  for (const auto& c : b.provenance) calls.push_back(c.to_json());
  return {{"pair_id", b.pair_id},
          {"source_path_id", b.source_path_id},
          {"scan", b.scan_id},
          {"variant", b.variant},
          {"seed", b.seed},
          {"viewpoints", b.viewpoints},
          {"instruction_index", b.instruction_index},
          {"original_instruction", b.original_instruction},
          {"gt_view_indices", b.gt_view_indices},
          {"scene_descriptions", b.scene_descriptions},
          {"rewritten_descriptions", b.rewritten_descriptions},
          {"added_objects", b.added_objects},
          {"panorama_refs", b.panorama_refs},
          {"new_view_refs", b.new_view_refs},
          {"landmarks", b.landmarks},
          {"grounded_landmarks", b.grounded_landmarks},
          {"grounding_scores", b.grounding_scores},
          {"new_descriptions", b.new_descriptions},
          {"rewritten_instruction", b.rewritten_instruction},
          {"provenance", calls}};
}

RewriteBundle bundle_from_json(const json& j) {
  try {
    RewriteBundle b;
    b.pair_id = j.at("pair_id");
    b.source_path_id = j.at("source_path_id");
    b.scan_id = j.at("scan");
    b.variant = j.at("variant");
    b.seed = j.at("seed");
    b.viewpoints = j.at("viewpoints").get<std::vector<std::string>>();
    b.instruction_index = j.at("instruction_index");
    b.original_instruction = j.at("original_instruction");
    b.gt_view_indices = j.at("gt_view_indices").get<std::vector<int>>();
    b.scene_descriptions = j.at("scene_descriptions").get<std::vector<std::string>>();
    b.rewritten_descriptions = j.at("rewritten_descriptions").get<std::vector<std::string>>();
    b.added_objects = j.at("added_objects").get<std::vector<std::vector<std::string>>>();
    b.panorama_refs = j.at("panorama_refs").get<std::vector<std::string>>();
    b.new_view_refs = j.at("new_view_refs").get<std::vector<std::string>>();
    b.landmarks = j.at("landmarks").get<std::vector<std::string>>();
    b.grounded_landmarks = j.at("grounded_landmarks").get<std::vector<std::string>>();
    b.grounding_scores = j.at("grounding_scores").get<std::vector<double>>();
    b.new_descriptions = j.at("new_descriptions").get<std::vector<std::string>>();
    b.rewritten_instruction = j.at("rewritten_instruction");
    for (const auto& c : j.at("provenance")) b.provenance.push_back(CallRecord::from_json(c));
    return b;
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, std::string("bundle: ") + e.what());
  }
}

ManifestEntry store_bundle(const RewriteBundle& bundle, ArtifactStore& store) {
  validate_bundle(bundle);
  const auto ref = store.put_json(bundle_to_json(bundle));
  ManifestEntry e;
  e.kind = "bundle";
  e.sha256 = ref.sha256;
  e.path = ref.path;
  e.meta = {{"pair_id", bundle.pair_id},
            {"source_path_id", bundle.source_path_id},
            {"variant", bundle.variant},
            {"steps", bundle.steps()}};
  return e;
}

RewriteBundle load_bundle(const ArtifactStore& store, const ManifestEntry& entry) {
  require(entry.kind == "bundle", ErrorKind::kValidation,
          "manifest entry kind '" + entry.kind + "' is not a bundle");
  auto b = bundle_from_json(store.get_json(entry.sha256));
  validate_bundle(b);
  return b;
}

}  // namespace vlnaug::corpus
