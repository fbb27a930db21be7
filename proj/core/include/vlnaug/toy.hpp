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

// A small synthetic corpus in the R2R layout: two grid-shaped scans,
// procedural panoramas and templated instructions. Used by the CLI `toy`
// command, the tests and the benchmarks.

#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "vlnaug/corpus.hpp"

namespace vlnaug::toy {

struct ToyOptions {
  int pairs = 5;
  int panorama_width = 256;  // height is half
  std::uint64_t seed = 7;
};

/// Writes connectivity, R2R_train.json and panoramas under `root`, then
/// loads it back.
corpus::Dataset write_toy_dataset(const std::filesystem::path& root, const ToyOptions& options = {});

/// All-mock run configuration for the toy corpus with small panoramas.
nlohmann::json toy_config(const std::filesystem::path& dataset_root,
                          const std::filesystem::path& output_root, std::uint64_t seed = 42);

}  // namespace vlnaug::toy
