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

// Labels of the line-oriented response grammar shared by prompt builders,
// parsers and the mock chat model.

#include <string_view>

namespace vlnaug::labels {

inline constexpr std::string_view kSceneDescription = "Scene description:";
inline constexpr std::string_view kAddedObjects = "Added objects:";
inline constexpr std::string_view kRewrittenDescription = "Rewritten description:";
inline constexpr std::string_view kOriginalInstruction = "Original instruction:";
inline constexpr std::string_view kRewrittenInstruction = "Rewritten instruction:";
inline constexpr std::string_view kInstruction = "Instruction:";
inline constexpr std::string_view kLandmarks = "Landmarks:";
inline constexpr std::string_view kStep = "Step ";
inline constexpr std::string_view kOriginalLandmark = "original landmark:";
inline constexpr std::string_view kNewObservation = "new observation:";

}  // namespace vlnaug::labels
