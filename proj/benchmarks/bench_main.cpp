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

#include <benchmark/benchmark.h>

#include "vlnaug/cropmix.hpp"
#include "vlnaug/grounding.hpp"
#include "vlnaug/hash.hpp"
#include "vlnaug/navmetrics.hpp"
#include "vlnaug/panogeom.hpp"
#include "vlnaug/providers/mock.hpp"

namespace {

using namespace vlnaug;

corpus::Panorama noise_panorama(int height, std::uint64_t seed) {
  Image img(2 * height, height);
  Rng rng(seed);
  for (auto& px : img.pixels) px = static_cast<std::uint8_t>(rng.between(0, 255));
  return corpus::make_panorama(std::move(img), corpus::PanoramaSource::kGenerated);
}

void BM_EquirecToPerspective(benchmark::State& state) {
  const auto pano = noise_panorama(512, 1);
  const int size = static_cast<int>(state.range(0));
  const panogeom::CameraParams p{60, 45, 10, size, size};
  for (auto _ : state) benchmark::DoNotOptimize(panogeom::equirec_to_perspective(pano, p));
  state.SetItemsProcessed(state.iterations() * size * size);
}
BENCHMARK(BM_EquirecToPerspective)->Arg(128)->Arg(224)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  const auto pano = noise_panorama(512, 2);
  for (auto _ : state) benchmark::DoNotOptimize(panogeom::discretize_panorama(pano, 60, 224));
}
BENCHMARK(BM_Discretize)->Unit(benchmark::kMillisecond);

void BM_CropMix(benchmark::State& state) {
  std::vector<corpus::Panorama> pool;
  for (std::uint64_t i = 0; i < 4; ++i) pool.push_back(noise_panorama(512, 10 + i));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(cropmix::crop_mix(pool, 4, ++seed));
}
BENCHMARK(BM_CropMix)->Unit(benchmark::kMillisecond);

void BM_Grounding(benchmark::State& state) {
  std::vector<Image> views;
  for (int t = 0; t < 10; ++t) {
    Image v(8, 8);
    v.pixels.assign(v.pixels.size(), static_cast<std::uint8_t>(20 * t));
    views.push_back(std::move(v));
  }
  grounding::LandmarkList landmarks;
  for (int m = 0; m < 10; ++m) landmarks.items.push_back("landmark " + std::to_string(m));
  providers::MockEmbedder emb;
  for (auto _ : state) benchmark::DoNotOptimize(grounding::ground_landmarks(views, landmarks, emb));
}
BENCHMARK(BM_Grounding);

void BM_Evaluate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  corpus::ConnectivityGraph g("grid");
  auto id = [](int x, int y) { return "n" + std::to_string(x) + "_" + std::to_string(y); };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.add_node(id(x, y), {2.0 * x, 0, 2.0 * y});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x + 1 < n) g.add_edge(id(x, y), id(x + 1, y));
      if (y + 1 < n) g.add_edge(id(x, y), id(x, y + 1));
    }
  const navmetrics::ShortestPaths sp(g);
  navmetrics::EpisodeResult ep;
  for (int k = 0; k < n; ++k) ep.gt_path.push_back(id(k, 0));
  for (int k = 0; k < n; ++k) ep.predicted_path.push_back(id(0, k));
  for (auto _ : state) benchmark::DoNotOptimize(navmetrics::evaluate(ep, sp));
}
BENCHMARK(BM_Evaluate)->Arg(6)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
