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

#include "vlnaug/config.hpp"

#include <initializer_list>

#include "vlnaug/error.hpp"

namespace vlnaug {
namespace {

using nlohmann::json;

void check_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> keys) {
  require(j.is_object(), ErrorKind::kConfig, std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || k == key;
    require(known, ErrorKind::kConfig,
            "unknown config key '" + std::string(where) + "." + key + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) j.at(key).get_to(out);
}

}  // namespace

std::uint64_t RunConfig::seed_value() const { return seed.value_or(0); }

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  try {
    check_keys(j, "config",
               {"dataset", "output", "seed", "augmentations_per_pair", "workers", "providers",
                "chat", "panorama", "views", "rewrite", "stages", "schedule", "cropmix"});
    const auto& ds = j.at("dataset");
    check_keys(ds, "dataset", {"root", "split", "flavor", "limit"});
    c.dataset_root = resolve(base_dir, ds.at("root").get<std::string>());
    if (ds.contains("split")) c.split = corpus::parse_split(ds["split"].get<std::string>());
    if (ds.contains("flavor")) c.flavor = corpus::parse_flavor(ds["flavor"].get<std::string>());
    if (ds.contains("limit") && !ds["limit"].is_null()) c.limit = ds["limit"].get<std::size_t>();
    c.output_root = resolve(base_dir, j.at("output").get<std::string>());
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    read(j, "augmentations_per_pair", c.augmentations_per_pair);
    read(j, "workers", c.workers);

    if (j.contains("providers")) {
      const auto& p = j["providers"];
      check_keys(p, "providers", {"default", "captioner", "chat", "embedder", "panorama"});
      if (p.contains("default")) {
        const auto d = providers::ProviderConfig::from_json(p["default"]);
        c.providers = {d, d, d, d};
      }
      if (p.contains("captioner")) c.providers.captioner = providers::ProviderConfig::from_json(p["captioner"]);
      if (p.contains("chat")) c.providers.chat = providers::ProviderConfig::from_json(p["chat"]);
      if (p.contains("embedder")) c.providers.embedder = providers::ProviderConfig::from_json(p["embedder"]);
      if (p.contains("panorama")) c.providers.panorama = providers::ProviderConfig::from_json(p["panorama"]);
    }
    if (j.contains("chat")) {
      const auto& ch = j["chat"];
      check_keys(ch, "chat", {"temperature", "presence_penalty", "max_tokens"});
      read(ch, "temperature", c.chat.temperature);
      read(ch, "presence_penalty", c.chat.presence_penalty);
      read(ch, "max_tokens", c.chat.max_tokens);
    }
    if (j.contains("panorama")) {
      const auto& pa = j["panorama"];
      check_keys(pa, "panorama", {"width", "height", "num_inference_steps"});
      read(pa, "width", c.panorama_width);
      read(pa, "height", c.panorama_height);
      read(pa, "num_inference_steps", c.inference_steps);
    }
    if (j.contains("views")) {
      const auto& v = j["views"];
      check_keys(v, "views", {"fov_deg", "size"});
      read(v, "fov_deg", c.view_fov_deg);
      read(v, "size", c.view_size);
    }
    if (j.contains("rewrite")) {
      const auto& r = j["rewrite"];
      check_keys(r, "rewrite",
                 {"max_requeries", "max_instruction_words", "scene_template", "instruction_template"});
      read(r, "max_requeries", c.max_requeries);
      read(r, "max_instruction_words", c.max_instruction_words);
      if (r.contains("scene_template") && !r["scene_template"].is_null()) {
        c.scene_template = resolve(base_dir, r["scene_template"].get<std::string>());
      }
      if (r.contains("instruction_template") && !r["instruction_template"].is_null()) {
        c.instruction_template = resolve(base_dir, r["instruction_template"].get<std::string>());
      }
    }
    if (j.contains("stages")) {
      const auto& s = j["stages"];
      check_keys(s, "stages", {"augment", "cropmix", "schedule"});
      read(s, "augment", c.stages.augment);
      read(s, "cropmix", c.stages.cropmix);
      read(s, "schedule", c.stages.schedule);
    }
    if (j.contains("schedule")) {
      const auto& s = j["schedule"];
      check_keys(s, "schedule", {"mix_ratio", "epochs", "hints", "resume_ref"});
      if (s.contains("mix_ratio")) c.mix_ratio = schedule::parse_ratio(s["mix_ratio"].get<std::string>());
      read(s, "epochs", c.schedule_epochs);
      read(s, "resume_ref", c.resume.stage1_best_checkpoint_ref);
      if (s.contains("hints")) {
        const auto& h = s["hints"];
        check_keys(h, "schedule.hints", {"max_iterations", "batch_size", "learning_rate"});
        read(h, "max_iterations", c.hints.max_iterations);
        read(h, "batch_size", c.hints.batch_size);
        read(h, "learning_rate", c.hints.learning_rate);
      }
    }
    if (j.contains("cropmix")) {
      const auto& m = j["cropmix"];
      check_keys(m, "cropmix", {"min_strips", "max_strips", "min_strip_frac"});
      read(m, "min_strips", c.cropmix.min_strips);
      read(m, "max_strips", c.cropmix.max_strips);
      read(m, "min_strip_frac", c.cropmix.min_strip_frac);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    fail(ErrorKind::kConfig, std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["dataset"] = {{"root", c.dataset_root.string()},
                  {"split", corpus::to_string(c.split)},
                  {"flavor", corpus::to_string(c.flavor)},
                  {"limit", c.limit ? json(*c.limit) : json(nullptr)}};
  j["output"] = c.output_root.string();
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  j["augmentations_per_pair"] = c.augmentations_per_pair;
  j["workers"] = c.workers;
  j["providers"] = {{"captioner", c.providers.captioner.to_json()},
                    {"chat", c.providers.chat.to_json()},
                    {"embedder", c.providers.embedder.to_json()},
                    {"panorama", c.providers.panorama.to_json()}};
  j["chat"] = {{"temperature", c.chat.temperature},
               {"presence_penalty", c.chat.presence_penalty},
               {"max_tokens", c.chat.max_tokens}};
  j["panorama"] = {{"width", c.panorama_width},
                   {"height", c.panorama_height},
                   {"num_inference_steps", c.inference_steps}};
  j["views"] = {{"fov_deg", c.view_fov_deg}, {"size", c.view_size}};
  j["rewrite"] = {{"max_requeries", c.max_requeries},
                  {"max_instruction_words", c.max_instruction_words},
                  {"scene_template", c.scene_template ? json(c.scene_template->string()) : json(nullptr)},
                  {"instruction_template",
                   c.instruction_template ? json(c.instruction_template->string()) : json(nullptr)}};
  j["stages"] = {{"augment", c.stages.augment},
                 {"cropmix", c.stages.cropmix},
                 {"schedule", c.stages.schedule}};
  j["schedule"] = {{"mix_ratio", std::to_string(c.mix_ratio.original_parts) + ":" +
                                     std::to_string(c.mix_ratio.rewritten_parts)},
                   {"epochs", c.schedule_epochs},
                   {"resume_ref", c.resume.stage1_best_checkpoint_ref},
                   {"hints",
                    {{"max_iterations", c.hints.max_iterations},
                     {"batch_size", c.hints.batch_size},
                     {"learning_rate", c.hints.learning_rate}}}};
  j["cropmix"] = {{"min_strips", c.cropmix.min_strips},
                  {"max_strips", c.cropmix.max_strips},
                  {"min_strip_frac", c.cropmix.min_strip_frac}};
  return j;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(corpus::read_text_file(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, "config " + path.string() + ": " + e.what());
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  return config_from_json(j, path.parent_path());
}

void validate(const RunConfig& c) {
  require(!c.dataset_root.empty(), ErrorKind::kConfig, "config: dataset.root is required");
  require(!c.output_root.empty(), ErrorKind::kConfig, "config: output is required");
  require(c.augmentations_per_pair >= 1, ErrorKind::kConfig,
          "config: augmentations_per_pair must be >= 1");
  require(c.workers >= 1, ErrorKind::kConfig, "config: workers must be >= 1");
  require(!c.providers.any_mock() || c.seed.has_value(), ErrorKind::kConfig,
          "config: a seed is required when any mock provider is selected");
  require(c.panorama_height > 0 && c.panorama_width == 2 * c.panorama_height, ErrorKind::kConfig,
          "config: panorama size must be 2:1");
  require(c.inference_steps > 0, ErrorKind::kConfig, "config: num_inference_steps must be > 0");
  require(c.view_fov_deg > 0 && c.view_fov_deg < 180 && c.view_size > 0, ErrorKind::kConfig,
          "config: invalid view geometry");
  require(c.max_requeries >= 0, ErrorKind::kConfig, "config: max_requeries must be >= 0");
  require(c.max_instruction_words > 0, ErrorKind::kConfig,
          "config: max_instruction_words must be > 0");
  require(c.chat.temperature >= 0 && c.chat.max_tokens > 0, ErrorKind::kConfig,
          "config: invalid chat parameters");
  require(c.schedule_epochs >= 1, ErrorKind::kConfig, "config: schedule.epochs must be >= 1");
}

}  // namespace vlnaug
