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

// Content-addressed blob store with JSONL manifests.
//
//   <root>/objects/<sha[0:2]>/<sha>.<ext>
//
// Blob key is the SHA-256 of the stored bytes. Writes go to a temp file and
// are renamed into place, so concurrent puts of distinct (or identical)
// content are safe. Manifest appends are serialized through ManifestWriter.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/image.hpp"

namespace vlnaug::corpus {

struct BlobRef {
  std::string sha256;
  std::string path;  // relative to the store root

  friend bool operator==(const BlobRef&, const BlobRef&) = default;
};

/// One manifest line: {"kind", "sha256", "path", "meta"}.
struct ManifestEntry {
  std::string kind;
  std::string sha256;
  std::string path;
  nlohmann::json meta = nlohmann::json::object();

  nlohmann::json to_json() const;
  static ManifestEntry from_json(const nlohmann::json& j);
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  BlobRef put(std::span<const std::uint8_t> bytes, const std::string& ext);
  BlobRef put_text(std::string_view text, const std::string& ext = "txt");
  /// Canonical serialization (sorted keys, no whitespace).
  BlobRef put_json(const nlohmann::json& doc);
  BlobRef put_png(const Image& img);

  bool contains(const std::string& sha256, const std::string& ext) const;
  /// Reads and re-hashes the blob; integrity failure is a kValidation error.
  std::vector<std::uint8_t> get(const std::string& sha256, const std::string& ext) const;
  std::vector<std::uint8_t> get(const BlobRef& ref) const;
  nlohmann::json get_json(const std::string& sha256) const;
  Image get_png(const std::string& sha256) const;

  std::filesystem::path relative_path(const std::string& sha256, const std::string& ext) const;
  std::filesystem::path absolute_path(const std::string& sha256, const std::string& ext) const;

 private:
  std::filesystem::path root_;
};

/// Atomically replaces `path` with `bytes` (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

/// Serializes manifest appends. One writer per manifest file.
class ManifestWriter {
 public:
  explicit ManifestWriter(std::filesystem::path path);

  void append(const ManifestEntry& entry);
  void append_json(const nlohmann::json& line);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

/// Writes a whole manifest atomically (used where order must be canonical).
void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries,
                    const std::optional<nlohmann::json>& header = std::nullopt);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);
/// Raw JSONL lines as documents.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

}  // namespace vlnaug::corpus
