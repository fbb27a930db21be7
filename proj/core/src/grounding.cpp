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

#include "vlnaug/grounding.hpp"

#include "vlnaug/labels.hpp"
#include "vlnaug/text.hpp"

namespace vlnaug::grounding {

providers::ChatRequest build_landmark_prompt(std::string_view instruction,
                                             const rewrite::ChatParams& params) {
  require(!text::trim(instruction).empty(), ErrorKind::kPrecondition,
          "extract_landmarks: empty instruction");
  std::string flat;
  for (auto line : text::split_lines(instruction)) {
    if (!flat.empty()) flat += ' ';
    flat += text::trim(line);
  }
  providers::ChatRequest req;
  req.user_text = std::string(kLandmarkDirective) + "\n" + std::string(labels::kInstruction) + " " + flat;
  req.temperature = params.temperature;
  req.presence_penalty = params.presence_penalty;
  req.max_tokens = params.max_tokens;
  req.seed = params.seed;
  return req;
}

LandmarkList parse_landmark_response(std::string_view response) {
  for (auto line : text::split_lines(response)) {
    line = text::trim(line);
    if (line.substr(0, labels::kLandmarks.size()) != labels::kLandmarks) continue;
    LandmarkList out{text::split_trimmed(line.substr(labels::kLandmarks.size()), ',')};
    if (out.items.empty()) {
      throw rewrite::ParseError(rewrite::ParseFailure::kEmptyField, "landmark response: empty list");
    }
    return out;
  }
  throw rewrite::ParseError(rewrite::ParseFailure::kMissingLabel,
                            "landmark response: missing \"Landmarks:\"");
}

LandmarkList extract_landmarks(std::string_view instruction, providers::ChatModel& chat,
                               const rewrite::ChatParams& params, int requeries,
                               std::vector<CallRecord>* calls) {
  const auto base = build_landmark_prompt(instruction, params);
  auto req = base;
  for (int attempt = 0;; ++attempt) {
    auto answer = chat.chat(req);
    if (calls) calls->push_back(answer.call);
    try {
      return parse_landmark_response(answer.value);
    } catch (const rewrite::ParseError&) {
      if (attempt >= requeries) throw;
      req = rewrite::restate_grammar(base, kLandmarkDirective, attempt + 1);
    }
  }
}

std::vector<std::size_t> argmax_rows(const std::vector<std::vector<double>>& sim) {
  std::vector<std::size_t> out;
  out.reserve(sim.size());
  for (const auto& row : sim) {
    require(!row.empty(), ErrorKind::kPrecondition, "argmax_rows: empty row");
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    out.push_back(best);
  }
  return out;
}

GroundedLandmarkSeq ground_landmarks(const std::vector<Image>& gt_views,
                                     const LandmarkList& landmarks, providers::Embedder& embedder,
                                     std::vector<CallRecord>* calls) {
  require(!gt_views.empty(), ErrorKind::kPrecondition, "ground_landmarks: no ground-truth views");
  require(!landmarks.items.empty(), ErrorKind::kPrecondition, "ground_landmarks: no landmarks");

  std::vector<std::vector<double>> text_vecs;
  for (const auto& lm : landmarks.items) {
    auto r = embedder.embed_text(lm);
    if (calls) calls->push_back(r.call);
    text_vecs.push_back(std::move(r.value.vector));
  }
  std::vector<std::vector<double>> sim;
  for (const auto& view : gt_views) {
    auto r = embedder.embed_image(view);
    if (calls) calls->push_back(r.call);
    auto& row = sim.emplace_back();
    for (const auto& tv : text_vecs) row.push_back(providers::cosine(r.value.vector, tv));
  }

  GroundedLandmarkSeq out;
  out.indices = argmax_rows(sim);
  for (std::size_t t = 0; t < sim.size(); ++t) {
    out.landmarks.push_back(landmarks.items[out.indices[t]]);
    out.scores.push_back(sim[t][out.indices[t]]);
  }
  return out;
}

std::vector<std::string> collect_new_descriptions(const std::vector<panogeom::ViewSet>& new_viewsets,
                                                  const std::vector<int>& gt_indices,
                                                  providers::Captioner& captioner,
                                                  std::vector<CallRecord>* calls) {
  require(new_viewsets.size() == gt_indices.size(), ErrorKind::kPrecondition,
          "collect_new_descriptions: " + std::to_string(new_viewsets.size()) + " view sets vs " +
              std::to_string(gt_indices.size()) + " indices");
  std::vector<std::string> out;
  for (std::size_t t = 0; t < gt_indices.size(); ++t) {
    const int idx = gt_indices[t];
    require(idx >= 0 && idx < panogeom::kViewCount, ErrorKind::kPrecondition,
            "collect_new_descriptions: view index " + std::to_string(idx) + " out of range");
    const auto& views = new_viewsets[t].views;
    require(static_cast<std::size_t>(idx) < views.size(), ErrorKind::kPrecondition,
            "collect_new_descriptions: incomplete view set");
    auto r = captioner.caption(views[static_cast<std::size_t>(idx)].image);
    if (calls) calls->push_back(r.call);
    out.push_back(std::move(r.value));
  }
  return out;
}

}  // namespace vlnaug::grounding
