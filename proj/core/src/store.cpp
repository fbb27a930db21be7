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

#include "vlnaug/store.hpp"

#include <atomic>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "vlnaug/corpus.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/hash.hpp"

namespace vlnaug::corpus {

using nlohmann::json;

json ManifestEntry::to_json() const {
  return json{{"kind", kind}, {"sha256", sha256}, {"path", path}, {"meta", meta}};
}

ManifestEntry ManifestEntry::from_json(const json& j) {
  try {
    ManifestEntry e;
    e.kind = j.at("kind").get<std::string>();
    e.sha256 = j.at("sha256").get<std::string>();
    e.path = j.at("path").get<std::string>();
    if (j.contains("meta")) e.meta = j.at("meta");
    return e;
  } catch (const json::exception& ex) {
    fail(ErrorKind::kParse, std::string("manifest entry: ") + ex.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  static std::atomic<std::uint64_t> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    require(!ec, ErrorKind::kIo, "cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(tid) + "." + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::kIo, "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    require(static_cast<bool>(out), ErrorKind::kIo, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::kIo, "cannot rename into " + path.string() + ": " + ec.message());
  }
}

ArtifactStore::ArtifactStore(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "objects", ec);
  require(!ec, ErrorKind::kIo, "store root " + root_.string() + " not writable: " + ec.message());
}

std::filesystem::path ArtifactStore::relative_path(const std::string& sha256,
                                                   const std::string& ext) const {
  return std::filesystem::path("objects") / sha256.substr(0, 2) / (sha256 + "." + ext);
}

std::filesystem::path ArtifactStore::absolute_path(const std::string& sha256,
                                                   const std::string& ext) const {
  return root_ / relative_path(sha256, ext);
}

BlobRef ArtifactStore::put(std::span<const std::uint8_t> bytes, const std::string& ext) {
  const std::string sha = sha256_hex(bytes);
  const auto abs = absolute_path(sha, ext);
  if (!std::filesystem::exists(abs)) {
    write_file_atomic(abs, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                            bytes.size()));
  }
  return BlobRef{sha, relative_path(sha, ext).generic_string()};
}

BlobRef ArtifactStore::put_text(std::string_view text, const std::string& ext) {
  return put(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                           text.size()),
             ext);
}

BlobRef ArtifactStore::put_json(const json& doc) { return put_text(doc.dump(), "json"); }

BlobRef ArtifactStore::put_png(const Image& img) { return put(encode_png(img), "png"); }

bool ArtifactStore::contains(const std::string& sha256, const std::string& ext) const {
  return std::filesystem::exists(absolute_path(sha256, ext));
}

std::vector<std::uint8_t> ArtifactStore::get(const std::string& sha256,
                                             const std::string& ext) const {
  const auto abs = absolute_path(sha256, ext);
  std::ifstream in(abs, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "blob not found: " + abs.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  require(sha256_hex(bytes) == sha256, ErrorKind::kValidation,
          "blob integrity check failed: " + abs.string());
  return bytes;
}

std::vector<std::uint8_t> ArtifactStore::get(const BlobRef& ref) const {
  const auto ext = std::filesystem::path(ref.path).extension().string();
  return get(ref.sha256, ext.empty() ? std::string() : ext.substr(1));
}

json ArtifactStore::get_json(const std::string& sha256) const {
  const auto bytes = get(sha256, "json");
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, "blob " + sha256 + ": " + e.what());
  }
}

Image ArtifactStore::get_png(const std::string& sha256) const {
  return decode_png(get(sha256, "png"));
}

ManifestWriter::ManifestWriter(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
}

void ManifestWriter::append(const ManifestEntry& entry) { append_json(entry.to_json()); }

void ManifestWriter::append_json(const json& line) {
  const std::string text = line.dump() + "\n";
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  require(static_cast<bool>(out), ErrorKind::kIo, "cannot append to " + path_.string());
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorKind::kIo, "short write to " + path_.string());
}

void write_manifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries,
                    const std::optional<json>& header) {
  std::string text;
  if (header) text += header->dump() + "\n";
  for (const auto& e : entries) text += e.to_json().dump() + "\n";
  write_file_atomic(path, text);
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::vector<json> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      fail(ErrorKind::kParse, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lines;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::vector<ManifestEntry> out;
  for (const auto& j : read_jsonl(path)) {
    if (j.contains("kind")) out.push_back(ManifestEntry::from_json(j));
  }
  return out;
}

}  // namespace vlnaug::corpus
