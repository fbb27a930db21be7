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

#include <filesystem>

#include <nlohmann/json.hpp>

namespace vlnaug::report {

inline constexpr int kHistogramBucketWords = 10;

/// Summary of a run root, recomputed from its artifacts:
///  - counts: inputs, requested variants, augmented pairs, drops;
///  - drop reasons and per-stage completion counts;
///  - per-role provider tallies (calls, attempts, latency) over the
///    provenance of bundles and drops, plus the live/cached split of the
///    latest run;
///  - rewritten-instruction length histogram in words.
/// kIo when the root or its bundle manifest is missing.
nlohmann::json summarize_run(const std::filesystem::path& root);

/// Human-readable rendering of a summary.
std::string format_summary(const nlohmann::json& summary);

}  // namespace vlnaug::report
