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

#include "vlnaug/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "vlnaug/bundle.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/pipeline.hpp"
#include "vlnaug/schedule.hpp"
#include "vlnaug/text.hpp"

namespace vlnaug::report {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Tally {
  long calls = 0;
  long attempts = 0;
  std::int64_t total_ms = 0;
  std::int64_t max_ms = 0;

  void add(const CallRecord& c) {
    ++calls;
    attempts += c.attempts;
    total_ms += c.duration_ms;
    max_ms = std::max(max_ms, c.duration_ms);
  }
};

}  // namespace

json summarize_run(const fs::path& root) {
  require(fs::is_directory(root), ErrorKind::kIo, "run root " + root.string() + " does not exist");
  const auto manifest = root / "augment.jsonl";
  require(fs::exists(manifest), ErrorKind::kIo, "no augment.jsonl under " + root.string());

  corpus::ArtifactStore store(root);
  std::vector<corpus::RewriteBundle> bundles;
  for (const auto& e : corpus::read_manifest(manifest)) {
    if (e.kind == "bundle") bundles.push_back(corpus::load_bundle(store, e));
  }
  std::vector<pipeline::DropRecord> drops;
  if (fs::exists(root / "drops.jsonl")) {
    for (const auto& j : corpus::read_jsonl(root / "drops.jsonl")) {
      drops.push_back(pipeline::DropRecord::from_json(j));
    }
  }

  json out;
  json counts{{"augmented", bundles.size()}, {"dropped", drops.size()}};
  if (fs::exists(root / "run_stats.json")) {
    const auto stats = json::parse(corpus::read_text_file(root / "run_stats.json"));
    counts["inputs"] = stats.at("inputs");
    counts["augmentations_per_pair"] = stats.at("augmentations_per_pair");
    counts["requested"] = stats.at("requested");
    const auto cache = pipeline::CacheCounts::from_json(stats.at("cache"));
    out["latest_run"] = {{"live_calls", cache.live},
                         {"cache_hits", cache.hits},
                         {"total_live_calls", cache.total_live()}};
  }
  out["counts"] = counts;

  std::map<std::string, long> reasons;
  for (const auto& d : drops) ++reasons[d.reason];
  out["drop_reasons"] = reasons;

  json stages = json::object();
  for (int s = 0; s < pipeline::kStageCount; ++s) {
    long done = static_cast<long>(bundles.size());
    for (const auto& d : drops) done += static_cast<int>(d.stage) > s ? 1 : 0;
    stages[std::string(pipeline::to_string(static_cast<pipeline::Stage>(s)))] = done;
  }
  out["stages_completed"] = stages;

  std::map<std::string, Tally> tallies;
  for (const auto& b : bundles) {
    for (const auto& c : b.provenance) tallies[c.role].add(c);
  }
  for (const auto& d : drops) {
    for (const auto& c : d.calls) tallies[c.role].add(c);
  }
  json providers = json::object();
  long total = 0;
  for (const auto& [role, t] : tallies) {
    total += t.calls;
    providers[role] = {{"calls", t.calls},
                       {"attempts", t.attempts},
                       {"total_ms", t.total_ms},
                       {"mean_ms", t.calls ? static_cast<double>(t.total_ms) / t.calls : 0.0},
                       {"max_ms", t.max_ms}};
  }
  out["provider_calls"] = providers;
  out["total_provider_calls"] = total;

  std::map<std::size_t, long> buckets;
  std::size_t max_words = 0;
  double sum_words = 0;
  long echoes = 0;
  for (const auto& b : bundles) {
    const auto n = text::word_count(b.rewritten_instruction);
    ++buckets[n / kHistogramBucketWords];
    max_words = std::max(max_words, n);
    sum_words += static_cast<double>(n);
    if (b.rewritten_instruction == b.original_instruction) ++echoes;
  }
  json hist = json::array();
  for (const auto& [bucket, n] : buckets) {
    hist.push_back({{"min_words", bucket * kHistogramBucketWords},
                    {"max_words", bucket * kHistogramBucketWords + kHistogramBucketWords - 1},
                    {"count", n}});
  }
  out["instruction_words"] = {{"histogram", hist},
                              {"mean", bundles.empty() ? 0.0 : sum_words / static_cast<double>(bundles.size())},
                              {"max", max_words}};
  out["echo_warnings"] = echoes;

  json manifests = json::object();
  for (const auto* name : {"stage1.jsonl", "stage2.jsonl"}) {
    if (!fs::exists(root / name)) continue;
    const auto m = schedule::read_stage_manifest(root / name);
    long original = 0;
    for (const auto& e : m.entries) original += e.item.origin == schedule::Origin::kOriginal ? 1 : 0;
    manifests[std::string(schedule::to_string(m.stage))] = {
        {"entries", m.entries.size()},
        {"original", original},
        {"rewritten", static_cast<long>(m.entries.size()) - original}};
  }
  if (fs::exists(root / "cropmix.jsonl")) {
    manifests["cropmix"] = {{"entries", corpus::read_manifest(root / "cropmix.jsonl").size()}};
  }
  out["manifests"] = manifests;
  return out;
}

std::string format_summary(const json& s) {
  std::ostringstream os;
  const auto& c = s.at("counts");
  os << "augmented pairs: " << c.at("augmented").get<long>();
  if (c.contains("requested")) os << " of " << c.at("requested").get<long>() << " requested";
  os << "\ndropped: " << c.at("dropped").get<long>() << "\n";
  for (const auto& [reason, n] : s.at("drop_reasons").items()) {
    os << "  " << reason << ": " << n.get<long>() << "\n";
  }
  os << "provider calls: " << s.at("total_provider_calls").get<long>() << "\n";
  for (const auto& [role, t] : s.at("provider_calls").items()) {
    os << "  " << role << ": " << t.at("calls").get<long>() << " calls, "
       << t.at("attempts").get<long>() << " attempts, mean " << t.at("mean_ms").get<double>()
       << " ms, max " << t.at("max_ms").get<long>() << " ms\n";
  }
  if (s.contains("latest_run")) {
    os << "latest run: " << s["latest_run"].at("total_live_calls").get<long>()
       << " live calls, the rest served from cache\n";
  }
  os << "instruction words: mean " << s.at("instruction_words").at("mean").get<double>() << ", max "
     << s.at("instruction_words").at("max").get<long>() << "\n";
  for (const auto& b : s.at("instruction_words").at("histogram")) {
    os << "  " << b.at("min_words").get<long>() << "-" << b.at("max_words").get<long>() << ": "
       << b.at("count").get<long>() << "\n";
  }
  return os.str();
}

}  // namespace vlnaug::report
