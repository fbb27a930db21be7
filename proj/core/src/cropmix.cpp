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

#include "vlnaug/cropmix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"

namespace vlnaug::cropmix {
namespace {

int cell_column(int cell, int width, int cells) {
  return static_cast<int>(std::lround(static_cast<double>(cell) * width / cells));
}

int min_cells(const CropMixOptions& o) {
  return static_cast<int>(std::ceil(o.min_strip_frac * o.grid_cells - 1e-9));
}

void check_options(const CropMixOptions& o) {
  require(o.grid_cells > 0 && o.min_strips >= 1 && o.max_strips >= o.min_strips,
          ErrorKind::kConfig, "cropmix: invalid strip options");
  require(o.min_strip_frac > 0 && o.min_strips * std::max(1, min_cells(o)) <= o.grid_cells,
          ErrorKind::kConfig, "cropmix: minimum strip width leaves no room for the minimum strip count");
}

}  // namespace

nlohmann::json to_json(const CropPlan& plan) {
  return {{"strip_boundaries", plan.strip_boundaries},
          {"source_assignment", plan.source_assignment},
          {"source_offsets", plan.source_offsets},
          {"seed", plan.seed}};
}

CropPlan plan_from_json(const nlohmann::json& j) {
  CropPlan p;
  j.at("strip_boundaries").get_to(p.strip_boundaries);
  j.at("source_assignment").get_to(p.source_assignment);
  j.at("source_offsets").get_to(p.source_offsets);
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

void validate(const CropPlan& plan, int width, std::size_t pool_size, const CropMixOptions& options) {
  const auto& b = plan.strip_boundaries;
  require(b.size() >= 2 && b.front() == 0 && b.back() == width, ErrorKind::kPrecondition,
          "crop plan: boundaries must run from 0 to the panorama width");
  require(plan.source_assignment.size() + 1 == b.size() &&
              plan.source_offsets.size() == plan.source_assignment.size(),
          ErrorKind::kPrecondition, "crop plan: one source and offset per strip");
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    require(b[k + 1] > b[k], ErrorKind::kPrecondition, "crop plan: boundaries not increasing");
    require(b[k + 1] - b[k] >= options.min_strip_frac * width - 1e-9, ErrorKind::kPrecondition,
            "crop plan: strip narrower than the minimum width");
    require(plan.source_assignment[k] < pool_size, ErrorKind::kPrecondition,
            "crop plan: source index outside the pool");
  }
}

CropPlan make_plan(std::size_t pool_size, int width, std::uint64_t seed,
                   const CropMixOptions& options) {
  check_options(options);
  require(pool_size > 0, ErrorKind::kPrecondition, "cropmix: empty pool");
  require(width >= options.grid_cells, ErrorKind::kPrecondition, "cropmix: panorama too narrow");
  const int cells = options.grid_cells;
  const int floor_cells = std::max(1, min_cells(options));
  const int max_strips = std::min(options.max_strips, cells / floor_cells);

  Rng rng(seed);
  const int n = rng.between(options.min_strips, max_strips);
  std::vector<int> widths(static_cast<std::size_t>(n), floor_cells);
  for (int extra = cells - n * floor_cells; extra > 0; --extra) {
    ++widths[rng.below(static_cast<std::uint64_t>(n))];
  }

  CropPlan plan;
  plan.seed = seed;
  int cell = 0;
  plan.strip_boundaries.push_back(0);
  for (int w : widths) {
    cell += w;
    plan.strip_boundaries.push_back(cell_column(cell, width, cells));
  }
  for (int k = 0; k < n; ++k) {
    plan.source_assignment.push_back(rng.below(pool_size));
    plan.source_offsets.push_back(
        cell_column(static_cast<int>(rng.below(static_cast<std::uint64_t>(cells))), width, cells));
  }
  const auto& src = plan.source_assignment;
  if (pool_size >= 2 && std::all_of(src.begin(), src.end(), [&](auto s) { return s == src[0]; })) {
    const auto k = rng.below(static_cast<std::uint64_t>(n));
    plan.source_assignment[k] = (src[0] + 1 + rng.below(pool_size - 1)) % pool_size;
  }
  return plan;
}

Image apply_plan(const std::vector<corpus::Panorama>& pool, const CropPlan& plan) {
  require(!pool.empty(), ErrorKind::kPrecondition, "cropmix: empty pool");
  const int w = pool[0].image.width;
  const int h = pool[0].image.height;
  Image out(w, h);
  for (std::size_t k = 0; k < plan.strip_count(); ++k) {
    const auto& src = pool[plan.source_assignment[k]].image;
    for (int y = 0; y < h; ++y) {
      for (int x = plan.strip_boundaries[k]; x < plan.strip_boundaries[k + 1]; ++x) {
        std::memcpy(out.at(x, y), src.at((x + plan.source_offsets[k]) % w, y), 3);
      }
    }
  }
  return out;
}

std::vector<CropMixed> crop_mix_with_plans(const std::vector<corpus::Panorama>& pool, int count,
                                           std::uint64_t seed, const CropMixOptions& options) {
  require(!pool.empty(), ErrorKind::kPrecondition, "crop_mix: empty pool");
  require(count > 0, ErrorKind::kPrecondition, "crop_mix: count must be positive");
  const int w = pool[0].image.width;
  const int h = pool[0].image.height;
  for (const auto& p : pool) {
    corpus::validate_panorama(p);
    require(p.image.width == w && p.image.height == h, ErrorKind::kPrecondition,
            "crop_mix: pool panoramas differ in size");
  }
  std::vector<CropMixed> out;
  for (int i = 0; i < count; ++i) {
    auto plan = make_plan(pool.size(), w, derive_seed(seed, "cropmix", static_cast<std::uint64_t>(i)),
                          options);
    validate(plan, w, pool.size(), options);
    auto img = apply_plan(pool, plan);
    out.push_back({corpus::make_panorama(std::move(img), corpus::PanoramaSource::kCropMixed, plan.seed),
                   std::move(plan)});
  }
  return out;
}

std::vector<corpus::Panorama> crop_mix(const std::vector<corpus::Panorama>& pool, int count,
                                       std::uint64_t seed, const CropMixOptions& options) {
  std::vector<corpus::Panorama> out;
  for (auto& m : crop_mix_with_plans(pool, count, seed, options)) out.push_back(std::move(m.panorama));
  return out;
}

}  // namespace vlnaug::cropmix
