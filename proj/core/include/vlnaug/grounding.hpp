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

// Sequential landmark extraction and per-step grounding of landmarks to
// ground-truth views, plus captioning of the matching views of rewritten
// panoramas.

#include <string>
#include <string_view>
#include <vector>

#include "vlnaug/panogeom.hpp"
#include "vlnaug/providers/types.hpp"
#include "vlnaug/rewrite.hpp"

namespace vlnaug::grounding {

inline constexpr std::string_view kLandmarkDirective =
    "List the landmarks (objects and scenes) mentioned in this navigation instruction, in order, "
    "comma-separated, under the label 'Landmarks:'.";

struct LandmarkList {
  std::vector<std::string> items;
};

struct GroundedLandmarkSeq {
  std::vector<std::string> landmarks;  // one per step
  std::vector<std::size_t> indices;    // position in the landmark list
  std::vector<double> scores;          // cosine similarity of the match
};

providers::ChatRequest build_landmark_prompt(std::string_view instruction,
                                             const rewrite::ChatParams& params = {});

/// Comma-split of the first "Landmarks:" line; throws rewrite::ParseError.
LandmarkList parse_landmark_response(std::string_view text);

/// Asks the chat model, re-querying up to `requeries` times with the grammar
/// restated. Every call is appended to `calls` when given.
LandmarkList extract_landmarks(std::string_view instruction, providers::ChatModel& chat,
                               const rewrite::ChatParams& params = {}, int requeries = 2,
                               std::vector<CallRecord>* calls = nullptr);

/// Row-wise argmax of a T x M similarity matrix; ties go to the smaller
/// column.
std::vector<std::size_t> argmax_rows(const std::vector<std::vector<double>>& sim);

/// For each step, the landmark whose text embedding has the highest cosine
/// with the step's gt view. The landmarks are embedded once each.
GroundedLandmarkSeq ground_landmarks(const std::vector<Image>& gt_views,
                                     const LandmarkList& landmarks, providers::Embedder& embedder,
                                     std::vector<CallRecord>* calls = nullptr);

/// C'_t = caption(new_viewsets[t].views[gt_indices[t]]).
std::vector<std::string> collect_new_descriptions(const std::vector<panogeom::ViewSet>& new_viewsets,
                                                  const std::vector<int>& gt_indices,
                                                  providers::Captioner& captioner,
                                                  std::vector<CallRecord>* calls = nullptr);

}  // namespace vlnaug::grounding
