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

// Random observation cropping: new panoramas assembled from full-height
// vertical strips of a pool of same-sized panoramas.

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/corpus.hpp"

namespace vlnaug::cropmix {

struct CropMixOptions {
  int min_strips = 2;
  int max_strips = 4;
  double min_strip_frac = 0.2;
  int grid_cells = 12;  // boundaries and source offsets snap to W / grid_cells
};

/// Strip k covers output columns [strip_boundaries[k], strip_boundaries[k+1])
/// and copies source_assignment[k] starting at column
/// (x + source_offsets[k]) mod W.
struct CropPlan {
  std::vector<int> strip_boundaries;
  std::vector<std::size_t> source_assignment;
  std::vector<int> source_offsets;
  std::uint64_t seed = 0;

  std::size_t strip_count() const { return source_assignment.size(); }
  friend bool operator==(const CropPlan&, const CropPlan&) = default;
};

nlohmann::json to_json(const CropPlan& plan);
CropPlan plan_from_json(const nlohmann::json& j);

/// kPrecondition on malformed plans: boundaries must run strictly from 0 to
/// `width`, every strip must be at least min_strip_frac * width wide, and
/// every source index must fall inside the pool.
void validate(const CropPlan& plan, int width, std::size_t pool_size,
              const CropMixOptions& options = {});

/// Seeded plan. With two or more pool entries at least two distinct sources
/// are used.
CropPlan make_plan(std::size_t pool_size, int width, std::uint64_t seed,
                   const CropMixOptions& options = {});

Image apply_plan(const std::vector<corpus::Panorama>& pool, const CropPlan& plan);

struct CropMixed {
  corpus::Panorama panorama;
  CropPlan plan;
};

/// `count` outputs; output i uses the plan seeded by derive_seed(seed, i).
std::vector<CropMixed> crop_mix_with_plans(const std::vector<corpus::Panorama>& pool, int count,
                                           std::uint64_t seed, const CropMixOptions& options = {});

std::vector<corpus::Panorama> crop_mix(const std::vector<corpus::Panorama>& pool, int count,
                                       std::uint64_t seed, const CropMixOptions& options = {});

}  // namespace vlnaug::cropmix
