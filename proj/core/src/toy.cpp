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

#include "vlnaug/toy.hpp"

#include <array>
#include <cmath>

#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"
#include "vlnaug/store.hpp"

namespace vlnaug::toy {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kRows = 3;
constexpr int kCols = 4;
constexpr double kSpacingM = 2.0;

constexpr std::array<std::string_view, 12> kNouns = {
    "sofa", "kitchen", "stairs", "door", "table", "hallway",
    "bedroom", "window", "lamp", "plant", "bathroom", "fireplace"};

constexpr std::array<std::string_view, 3> kTemplates = {
    "Walk past the {0} and turn left at the {1}. Stop next to the {2}.",
    "Go through the {0}, continue toward the {1} and wait by the {2}.",
    "Exit the {0}, head to the {1} and stop in front of the {2}."};

std::string node_id(const std::string& scan, int r, int c) {
  return scan + "_" + std::to_string(r) + std::to_string(c);
}

// Small height changes give some steps a non-zero elevation.
double height_of(int r, int c) { return 0.15 * ((r + 2 * c) % 3); }

std::string fill(std::string_view tmpl, const std::array<std::string_view, 3>& nouns) {
  std::string out(tmpl);
  for (std::size_t i = 0; i < nouns.size(); ++i) {
    const auto key = "{" + std::to_string(i) + "}";
    out.replace(out.find(key), key.size(), nouns[i]);
  }
  return out;
}

Image toy_panorama(int width, std::uint64_t seed) {
  const int height = width / 2;
  Image img(width, height);
  Rng rng(seed);
  std::array<double, 3> base{};
  for (auto& b : base) b = 60 + 120 * rng.unit();
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto* px = img.at(x, y);
      const double phase = 2 * 3.14159265358979 * x / width;
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const double v = base[ch] + 50 * std::sin(phase + 2.0 * static_cast<double>(ch)) +
                         40.0 * y / height;
        px[ch] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
      }
    }
  }
  for (int block = 0; block < 6; ++block) {
    const int bw = width / 16 + static_cast<int>(rng.below(static_cast<std::uint64_t>(width / 16)));
    const int bh = height / 8 + static_cast<int>(rng.below(static_cast<std::uint64_t>(height / 4)));
    const int x0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
    const int y0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(height - bh)));
    const std::array<std::uint8_t, 3> color{static_cast<std::uint8_t>(rng.below(256)),
                                            static_cast<std::uint8_t>(rng.below(256)),
                                            static_cast<std::uint8_t>(rng.below(256))};
    for (int y = y0; y < y0 + bh; ++y) {
      for (int dx = 0; dx < bw; ++dx) {
        auto* px = img.at((x0 + dx) % width, y);
        std::copy(color.begin(), color.end(), px);
      }
    }
  }
  return img;
}

}  // namespace

corpus::Dataset write_toy_dataset(const fs::path& root, const ToyOptions& options) {
  require(options.pairs >= 1, ErrorKind::kConfig, "toy: pairs must be >= 1");
  require(options.panorama_width >= 24 && options.panorama_width % 2 == 0, ErrorKind::kConfig,
          "toy: panorama width must be even and >= 24");
  const std::array<std::string, 2> scans = {"toyscanA", "toyscanB"};

  for (const auto& scan : scans) {
    json nodes = json::array();
    for (int r = 0; r < kRows; ++r) {
      for (int c = 0; c < kCols; ++c) {
        std::vector<double> pose(16, 0.0);
        pose[0] = pose[5] = pose[10] = pose[15] = 1.0;
        pose[3] = c * kSpacingM;   // x
        pose[7] = r * kSpacingM;   // forward
        pose[11] = height_of(r, c);  // up
        std::vector<bool> unobstructed;
        for (int r2 = 0; r2 < kRows; ++r2) {
          for (int c2 = 0; c2 < kCols; ++c2) {
            unobstructed.push_back(std::abs(r - r2) + std::abs(c - c2) == 1);
          }
        }
        nodes.push_back({{"image_id", node_id(scan, r, c)},
                         {"pose", pose},
                         {"unobstructed", unobstructed},
                         {"included", true}});
        const auto pano_path = root / "panoramas" / scan / (node_id(scan, r, c) + ".png");
        fs::create_directories(pano_path.parent_path());
        write_png(pano_path, toy_panorama(options.panorama_width,
                                          derive_seed(options.seed, node_id(scan, r, c))));
      }
    }
    corpus::write_file_atomic(corpus::connectivity_file(root, scan), nodes.dump(1) + "\n");
  }

  // Snake-like walks of 3 to 5 nodes.
  json pairs = json::array();
  for (int i = 0; i < options.pairs; ++i) {
    const auto& scan = scans[static_cast<std::size_t>(i) % scans.size()];
    Rng rng(derive_seed(options.seed, "pair", static_cast<std::uint64_t>(i)));
    const int steps = 3 + static_cast<int>(rng.below(3));
    int r = static_cast<int>(rng.below(kRows));
    int c = static_cast<int>(rng.below(kCols));
    std::vector<std::string> path{node_id(scan, r, c)};
    while (static_cast<int>(path.size()) < steps) {
      const int dir = static_cast<int>(rng.below(4));
      const int nr = r + (dir == 0) - (dir == 1);
      const int nc = c + (dir == 2) - (dir == 3);
      if (nr < 0 || nr >= kRows || nc < 0 || nc >= kCols) continue;
      const auto next = node_id(scan, nr, nc);
      if (std::find(path.begin(), path.end(), next) != path.end()) {
        if (rng.below(4) != 0) continue;  // mostly avoid revisits, but never stall
      }
      r = nr;
      c = nc;
      path.push_back(next);
    }
    std::vector<std::string> instructions;
    for (std::size_t k = 0; k < kTemplates.size(); ++k) {
      const std::size_t o = static_cast<std::size_t>(i) * 3 + k;
      instructions.push_back(fill(kTemplates[k], {kNouns[o % kNouns.size()],
                                                   kNouns[(o + 4) % kNouns.size()],
                                                   kNouns[(o + 7) % kNouns.size()]}));
    }
    const double heading = 2 * 3.14159265358979 * rng.unit();
    pairs.push_back({{"path_id", "toy" + std::to_string(1000 + i)},
                     {"scan", scan},
                     {"path", path},
                     {"heading", heading},
                     {"instructions", instructions}});
  }
  corpus::write_file_atomic(corpus::trajectory_file(root, corpus::Split::kTrain), pairs.dump(1) + "\n");
  return corpus::load_dataset(root, corpus::Split::kTrain);
}

json toy_config(const fs::path& dataset_root, const fs::path& output_root, std::uint64_t seed) {
  return {{"dataset", {{"root", dataset_root.string()}, {"split", "train"}, {"flavor", "R2R"}}},
          {"output", output_root.string()},
          {"seed", seed},
          {"augmentations_per_pair", 3},
          {"workers", 1},
          {"providers", {{"default", "mock"}}},
          {"panorama", {{"width", 256}, {"height", 128}, {"num_inference_steps", 30}}},
          {"views", {{"fov_deg", 60.0}, {"size", 64}}},
          {"schedule", {{"mix_ratio", "1:3"}}}};
}

}  // namespace vlnaug::toy
