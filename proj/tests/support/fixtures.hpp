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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <unistd.h>

#include "vlnaug/hash.hpp"
#include "vlnaug/image.hpp"

namespace testutil {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "vlnaug") {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << bytes;
}

/// Relative path -> SHA-256 of every regular file under `root`, skipping
/// names in `exclude`.
inline std::map<std::string, std::string> tree_digest(const std::filesystem::path& root,
                                                      const std::set<std::string>& exclude = {}) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(e.path(), root).string();
    if (exclude.count(rel)) continue;
    out[rel] = vlnaug::sha256_hex(read_file(e.path()));
  }
  return out;
}

/// Smooth synthetic panorama with a few sharp features; width 2 * height.
inline vlnaug::Image synthetic_pano(int height, std::uint64_t seed) {
  vlnaug::Image img(2 * height, height);
  vlnaug::Rng rng(seed);
  const double a = rng.unit() * 6.28, b = rng.unit() * 6.28;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      auto* p = img.at(x, y);
      const double t = 6.283185307179586 * x / img.width;
      p[0] = static_cast<std::uint8_t>(127 + 100 * std::sin(t + a));
      p[1] = static_cast<std::uint8_t>(255.0 * y / (img.height - 1));
      p[2] = static_cast<std::uint8_t>(127 + 100 * std::cos(2 * t + b) * std::sin(3.14159 * y / img.height));
    }
  }
  return img;
}

}  // namespace testutil
