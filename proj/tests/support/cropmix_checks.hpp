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

#include <cstring>
#include <set>
#include <vector>

#include "vlnaug/cropmix.hpp"
#include "vlnaug/hash.hpp"

namespace testutil {

/// Pool of `n` distinct smooth panoramas, `height` x 2 * `height`.
inline std::vector<vlnaug::corpus::Panorama> cropmix_pool(int n, int height, std::uint64_t seed) {
  std::vector<vlnaug::corpus::Panorama> pool;
  for (int i = 0; i < n; ++i) {
    vlnaug::Image img(2 * height, height);
    vlnaug::Rng rng(vlnaug::derive_seed(seed, "pool", static_cast<std::uint64_t>(i)));
    for (auto& b : img.pixels) b = static_cast<std::uint8_t>(rng.below(256));
    pool.push_back(vlnaug::corpus::make_panorama(std::move(img), vlnaug::corpus::PanoramaSource::kGenerated));
  }
  return pool;
}

/// Column x of `out` inside strip k must equal column (x + offset_k) mod W
/// of the strip's source. Checks every `stride`-th row.
inline bool pixel_provenance_ok(const std::vector<vlnaug::corpus::Panorama>& pool,
                                const vlnaug::cropmix::CropPlan& plan, const vlnaug::Image& out,
                                int stride = 1) {
  const int w = out.width;
  for (std::size_t k = 0; k < plan.source_assignment.size(); ++k) {
    const auto& src = pool.at(plan.source_assignment[k]).image;
    for (int x = plan.strip_boundaries[k]; x < plan.strip_boundaries[k + 1]; ++x) {
      const int sx = ((x + plan.source_offsets[k]) % w + w) % w;
      for (int y = 0; y < out.height; y += stride) {
        if (std::memcmp(out.at(x, y), src.at(sx, y), 3) != 0) return false;
      }
    }
  }
  return true;
}

inline std::size_t distinct_sources(const vlnaug::cropmix::CropPlan& plan) {
  return std::set<std::size_t>(plan.source_assignment.begin(), plan.source_assignment.end()).size();
}

}  // namespace testutil
