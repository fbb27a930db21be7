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

#include "vlnaug/pipeline.hpp"

#include <atomic>
#include <exception>
#include <thread>

#include <spdlog/spdlog.h>

#include "vlnaug/cropmix.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/grounding.hpp"
#include "vlnaug/hash.hpp"
#include "vlnaug/panogeom.hpp"
#include "vlnaug/providers/factory.hpp"
#include "vlnaug/report.hpp"
#include "vlnaug/rewrite.hpp"

namespace vlnaug::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, kStageCount> kStageNames = {
    "caption", "scene_rewrite", "panorama", "discretize", "landmarks",
    "ground",  "new_caption",   "instruction", "persist"};

// ---------------------------------------------------------------------------
// Provider-call cache

class RequestCache {
 public:
  RequestCache(fs::path dir, std::shared_ptr<CacheStats> stats)
      : dir_(std::move(dir)), stats_(std::move(stats)) {}

  static std::string key(std::string_view role, std::string_view provider_id, const json& request) {
    Sha256 h;
    h.field(role).field(provider_id).field(request.dump());
    return h.hex();
  }

  std::optional<json> get(const std::string& role, const std::string& key) const {
    const auto path = file(role, key);
    if (!fs::exists(path)) return std::nullopt;
    try {
      return json::parse(corpus::read_text_file(path));
    } catch (const std::exception& e) {
      spdlog::warn("ignoring unreadable cache entry {}: {}", path.string(), e.what());
      return std::nullopt;
    }
  }

  void put(const std::string& role, const std::string& key, const json& doc) const {
    corpus::write_file_atomic(file(role, key), doc.dump() + "\n");
  }

  void record(const std::string& role, bool hit) const { stats_->record(role, hit); }

 private:
  fs::path file(const std::string& role, const std::string& key) const {
    return dir_ / role / (key + ".json");
  }

  fs::path dir_;
  std::shared_ptr<CacheStats> stats_;
};

template <typename T, typename Compute, typename Encode, typename Decode>
providers::Traced<T> cached_call(const RequestCache& cache, const std::string& role,
                                 const std::string& key, Compute compute, Encode encode,
                                 Decode decode) {
  if (auto doc = cache.get(role, key)) {
    if (auto value = decode(*doc)) {
      cache.record(role, true);
      return {std::move(*value), CallRecord::from_json(doc->at("call"))};
    }
  }
  auto result = compute();
  cache.record(role, false);
  json doc = encode(result.value);
  doc["call"] = result.call.to_json();
  cache.put(role, key, doc);
  return result;
}

class CachedCaptioner final : public providers::Captioner {
 public:
  CachedCaptioner(std::shared_ptr<providers::Captioner> inner, std::shared_ptr<RequestCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }

 protected:
  providers::Traced<std::string> do_caption(const Image& image) override {
    const auto key = RequestCache::key("caption", id(), {{"image_sha256", image_digest(image)}});
    return cached_call<std::string>(
        *cache_, "caption", key, [&] { return inner_->caption(image); },
        [](const std::string& v) { return json{{"text", v}}; },
        [](const json& d) -> std::optional<std::string> { return d.at("text").get<std::string>(); });
  }

 private:
  std::shared_ptr<providers::Captioner> inner_;
  std::shared_ptr<RequestCache> cache_;
};

class CachedChat final : public providers::ChatModel {
 public:
  CachedChat(std::shared_ptr<providers::ChatModel> inner, std::shared_ptr<RequestCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }

 protected:
  providers::Traced<std::string> do_chat(const providers::ChatRequest& req) override {
    const auto key = RequestCache::key("chat", id(), req.to_json());
    return cached_call<std::string>(
        *cache_, "chat", key, [&] { return inner_->chat(req); },
        [](const std::string& v) { return json{{"text", v}}; },
        [](const json& d) -> std::optional<std::string> { return d.at("text").get<std::string>(); });
  }

 private:
  std::shared_ptr<providers::ChatModel> inner_;
  std::shared_ptr<RequestCache> cache_;
};

class CachedEmbedder final : public providers::Embedder {
 public:
  CachedEmbedder(std::shared_ptr<providers::Embedder> inner, std::shared_ptr<RequestCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}
  std::string id() const override { return inner_->id(); }

 protected:
  providers::Traced<providers::EmbedResult> do_embed_text(std::string_view text) override {
    const auto key = RequestCache::key("embed_text", id(), {{"text", text}});
    return cached_call<providers::EmbedResult>(
        *cache_, "embed_text", key, [&] { return inner_->embed_text(text); }, encode, decode);
  }
  providers::Traced<providers::EmbedResult> do_embed_image(const Image& image) override {
    const auto key = RequestCache::key("embed_image", id(), {{"image_sha256", image_digest(image)}});
    return cached_call<providers::EmbedResult>(
        *cache_, "embed_image", key, [&] { return inner_->embed_image(image); }, encode, decode);
  }

 private:
  static json encode(const providers::EmbedResult& r) { return {{"vector", r.vector}}; }
  static std::optional<providers::EmbedResult> decode(const json& d) {
    return providers::EmbedResult{d.at("vector").get<std::vector<double>>()};
  }

  std::shared_ptr<providers::Embedder> inner_;
  std::shared_ptr<RequestCache> cache_;
};

class CachedPanoramaGenerator final : public providers::PanoramaGenerator {
 public:
  CachedPanoramaGenerator(std::shared_ptr<providers::PanoramaGenerator> inner,
                          std::shared_ptr<RequestCache> cache,
                          std::shared_ptr<corpus::ArtifactStore> store)
      : inner_(std::move(inner)), cache_(std::move(cache)), store_(std::move(store)) {}
  std::string id() const override { return inner_->id(); }

 protected:
  providers::Traced<Image> do_generate(const providers::PanoramaRequest& req) override {
    const auto key = RequestCache::key("panorama", id(), req.to_json());
    return cached_call<Image>(
        *cache_, "panorama", key,
        [&] {
          auto r = inner_->generate_panorama(req);
          return providers::Traced<Image>{std::move(r.value.image), std::move(r.call)};
        },
        [&](const Image& img) { return json{{"png", store_->put_png(img).sha256}}; },
        [&](const json& d) -> std::optional<Image> {
          const auto sha = d.at("png").get<std::string>();
          if (!store_->contains(sha, "png")) return std::nullopt;
          return store_->get_png(sha);
        });
  }

 private:
  std::shared_ptr<providers::PanoramaGenerator> inner_;
  std::shared_ptr<RequestCache> cache_;
  std::shared_ptr<corpus::ArtifactStore> store_;
};

// ---------------------------------------------------------------------------
// One (pair, variant)

struct Context {
  const RunConfig& config;
  const corpus::Dataset& dataset;
  providers::ProviderSet providers;
  std::shared_ptr<corpus::ArtifactStore> store;
  rewrite::ScenePromptTemplate scene_template;
  rewrite::InstructionPromptTemplate instruction_template;
  const PipelineHooks& hooks;
  fs::path checkpoint_dir;
};

struct Outcome {
  std::optional<corpus::ManifestEntry> entry;
  std::optional<DropRecord> drop;
};

fs::path checkpoint_path(const Context& ctx, const std::string& pair_id) {
  return ctx.checkpoint_dir / (sha256_hex(pair_id).substr(0, 32) + ".json");
}

void write_checkpoint(const Context& ctx, const std::string& pair_id, const Outcome& out) {
  json doc{{"pair_id", pair_id}};
  if (out.entry) {
    doc["status"] = "done";
    doc["entry"] = out.entry->to_json();
  } else {
    doc["status"] = "dropped";
    doc["drop"] = out.drop->to_json();
  }
  corpus::write_file_atomic(checkpoint_path(ctx, pair_id), doc.dump() + "\n");
}

std::optional<Outcome> read_checkpoint(const Context& ctx, const std::string& pair_id) {
  const auto path = checkpoint_path(ctx, pair_id);
  if (!fs::exists(path)) return std::nullopt;
  const auto doc = json::parse(corpus::read_text_file(path));
  if (doc.at("pair_id") != pair_id) return std::nullopt;
  Outcome out;
  if (doc.at("status") == "done") {
    out.entry = corpus::ManifestEntry::from_json(doc.at("entry"));
    if (!ctx.store->contains(out.entry->sha256, "json")) return std::nullopt;
  } else {
    out.drop = DropRecord::from_json(doc.at("drop"));
  }
  return out;
}

rewrite::ChatParams chat_params(const RunConfig& config, std::uint64_t seed) {
  auto p = config.chat;
  p.seed = seed;
  return p;
}

template <typename Parse>
auto chat_and_parse(providers::ChatModel& chat, const providers::ChatRequest& base,
                    std::string_view grammar, int requeries, std::vector<CallRecord>& calls,
                    Parse parse) {
  auto req = base;
  for (int attempt = 0;; ++attempt) {
    auto answer = chat.chat(req);
    calls.push_back(answer.call);
    try {
      return parse(answer.value);
    } catch (const rewrite::ParseError&) {
      if (attempt >= requeries) throw;
      req = rewrite::restate_grammar(base, grammar, attempt + 1);
    }
  }
}

// GT view per step. The last step has no next node and keeps the heading of
// the final move.
std::vector<int> gt_indices(const corpus::ConnectivityGraph& graph,
                            const std::vector<std::string>& vps) {
  std::vector<int> out;
  for (std::size_t t = 0; t + 1 < vps.size(); ++t) {
    out.push_back(panogeom::gt_view_index(graph, vps[t], vps[t + 1]));
  }
  out.push_back(out.back());
  return out;
}

// Which failures drop a variant; everything else aborts the run.
std::optional<std::string> drop_reason(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kMetric: return "metric";
    case ErrorKind::kProvider: return "provider";
    default: return std::nullopt;
  }
}

Outcome run_variant(const Context& ctx, const corpus::TrajectoryInstructionPair& pair, int variant) {
  const auto& cfg = ctx.config;
  corpus::RewriteBundle b;
  b.pair_id = augmented_pair_id(pair.path_id, variant);
  b.source_path_id = pair.path_id;
  b.scan_id = pair.scan_id;
  b.variant = variant;
  const auto pair_seed = derive_seed(cfg.seed_value(), "pair:" + pair.path_id);
  b.seed = derive_seed(pair_seed, "variant", static_cast<std::uint64_t>(variant));
  b.viewpoints = pair.viewpoints;
  b.instruction_index = static_cast<int>(static_cast<std::size_t>(variant) % pair.instructions.size());
  b.original_instruction = pair.instructions[static_cast<std::size_t>(b.instruction_index)];

  const auto steps = b.viewpoints.size();
  std::vector<CallRecord> calls;
  Stage stage = Stage::kCaption;
  auto finish = [&](Stage s) {
    if (ctx.hooks.on_stage_complete) ctx.hooks.on_stage_complete(b.pair_id, s);
  };
  auto& captioner = *ctx.providers.captioner;
  auto& chat = *ctx.providers.chat;

  try {
    const auto& graph = ctx.dataset.graph(pair.scan_id);
    b.gt_view_indices = gt_indices(graph, b.viewpoints);
    std::vector<corpus::Panorama> originals;
    for (const auto& vp : b.viewpoints) {
      originals.push_back(ctx.dataset.load_panorama(pair.scan_id, vp));
      auto c = captioner.caption(originals.back().image);
      calls.push_back(c.call);
      b.scene_descriptions.push_back(std::move(c.value));
    }
    finish(stage);

    stage = Stage::kSceneRewrite;
    for (std::size_t t = 0; t < steps; ++t) {
      const auto req = rewrite::build_scene_prompt(
          b.scene_descriptions[t], ctx.scene_template,
          chat_params(cfg, derive_seed(b.seed, "scene", t)));
      auto r = chat_and_parse(chat, req, ctx.scene_template.output_grammar, cfg.max_requeries, calls,
                              [](const std::string& s) { return rewrite::parse_scene_response(s); });
      b.added_objects.push_back(std::move(r.added_objects));
      b.rewritten_descriptions.push_back(std::move(r.description));
    }
    finish(stage);

    stage = Stage::kPanorama;
    std::vector<corpus::Panorama> generated;
    for (std::size_t t = 0; t < steps; ++t) {
      providers::PanoramaRequest req;
      req.prompt_text = b.rewritten_descriptions[t];
      req.width = cfg.panorama_width;
      req.height = cfg.panorama_height;
      req.num_inference_steps = cfg.inference_steps;
      req.seed = derive_seed(b.seed, "panorama", t);
      auto p = ctx.providers.panorama->generate_panorama(req);
      calls.push_back(p.call);
      b.panorama_refs.push_back(ctx.store->put_png(p.value.image).sha256);
      generated.push_back(std::move(p.value));
    }
    finish(stage);

    stage = Stage::kDiscretize;
    std::vector<panogeom::ViewSet> new_views;
    for (std::size_t t = 0; t < steps; ++t) {
      new_views.push_back(panogeom::discretize_panorama(generated[t], cfg.view_fov_deg, cfg.view_size));
      const auto& g = new_views.back().views[static_cast<std::size_t>(b.gt_view_indices[t])].image;
      b.new_view_refs.push_back(ctx.store->put_png(g).sha256);
    }
    generated.clear();
    finish(stage);

    stage = Stage::kLandmarks;
    const auto landmark_req = grounding::build_landmark_prompt(
        b.original_instruction,
        chat_params(cfg, derive_seed(pair_seed, "landmarks",
                                     static_cast<std::uint64_t>(b.instruction_index))));
    const auto landmarks =
        chat_and_parse(chat, landmark_req, grounding::kLandmarkDirective, cfg.max_requeries, calls,
                       [](const std::string& s) { return grounding::parse_landmark_response(s); });
    b.landmarks = landmarks.items;
    finish(stage);

    stage = Stage::kGround;
    std::vector<Image> gt_views;
    for (std::size_t t = 0; t < steps; ++t) {
      gt_views.push_back(panogeom::equirec_to_perspective(
          originals[t], panogeom::view_camera(b.gt_view_indices[t], cfg.view_fov_deg, cfg.view_size)));
    }
    originals.clear();
    auto grounded = grounding::ground_landmarks(gt_views, landmarks, *ctx.providers.embedder, &calls);
    b.grounded_landmarks = std::move(grounded.landmarks);
    b.grounding_scores = std::move(grounded.scores);
    finish(stage);

    stage = Stage::kNewCaption;
    b.new_descriptions =
        grounding::collect_new_descriptions(new_views, b.gt_view_indices, captioner, &calls);
    new_views.clear();
    finish(stage);

    stage = Stage::kInstruction;
    const auto instr_req = rewrite::build_instruction_prompt(
        b.grounded_landmarks, b.new_descriptions, b.original_instruction, ctx.instruction_template,
        chat_params(cfg, derive_seed(b.seed, "instruction")));
    const auto max_words = cfg.max_instruction_words;
    b.rewritten_instruction = chat_and_parse(
        chat, instr_req, ctx.instruction_template.output_grammar, cfg.max_requeries, calls,
        [&](const std::string& s) { return rewrite::parse_instruction_response(s, max_words); });
    if (b.rewritten_instruction == b.original_instruction) {
      spdlog::warn("{}: rewritten instruction echoes the original", b.pair_id);
    }
    finish(stage);

    stage = Stage::kPersist;
    b.provenance = calls;
    Outcome out{corpus::store_bundle(b, *ctx.store), std::nullopt};
    write_checkpoint(ctx, b.pair_id, out);
    finish(stage);
    return out;
  } catch (const rewrite::ParseError& e) {
    DropRecord d{b.pair_id, pair.path_id, variant, stage,
                 e.failure() == rewrite::ParseFailure::kTooLong ? "length" : "parse", e.what(), calls};
    spdlog::warn("dropping {} at {}: {}", b.pair_id, to_string(stage), e.what());
    Outcome out{std::nullopt, std::move(d)};
    write_checkpoint(ctx, b.pair_id, out);
    return out;
  } catch (const ProviderError& e) {
    if (!e.retryable()) throw;
    spdlog::warn("dropping {} at {}: {}", b.pair_id, to_string(stage), e.what());
    // Not checkpointed: a resumed run retries transient outages.
    return {std::nullopt, DropRecord{b.pair_id, pair.path_id, variant, stage, "provider", e.what(), calls}};
  } catch (const Error& e) {
    const auto reason = drop_reason(e);
    if (!reason) throw;
    spdlog::warn("dropping {} at {}: {}", b.pair_id, to_string(stage), e.what());
    Outcome out{std::nullopt, DropRecord{b.pair_id, pair.path_id, variant, stage, *reason, e.what(), calls}};
    if (*reason != "protocol") write_checkpoint(ctx, b.pair_id, out);
    return out;
  }
}

json fingerprint_config(const RunConfig& config) {
  auto j = config_to_json(config);
  j.erase("output");
  j.erase("workers");
  j.erase("stages");
  return j;
}

corpus::ArtifactStore open_store(const RunConfig& config) { return corpus::ArtifactStore(config.output_root); }

std::vector<corpus::RewriteBundle> load_bundles(const corpus::ArtifactStore& store, const fs::path& root) {
  const auto manifest = root / "augment.jsonl";
  require(fs::exists(manifest), ErrorKind::kIo,
          "no augment.jsonl under " + root.string() + "; run augment first");
  std::vector<corpus::RewriteBundle> out;
  for (const auto& e : corpus::read_manifest(manifest)) {
    if (e.kind == "bundle") out.push_back(corpus::load_bundle(store, e));
  }
  return out;
}

}  // namespace

std::string_view to_string(Stage stage) { return kStageNames[static_cast<std::size_t>(stage)]; }

Stage parse_stage(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  fail(ErrorKind::kParse, "unknown pipeline stage '" + std::string(name) + "'");
}

json DropRecord::to_json() const {
  json c = json::array();
  for (const auto& call : calls) c.push_back(call.to_json());
  return {{"pair_id", pair_id}, {"source_path_id", source_path_id}, {"variant", variant},
          {"stage", to_string(stage)}, {"reason", reason}, {"message", message}, {"calls", c}};
}

DropRecord DropRecord::from_json(const json& j) {
  DropRecord d;
  d.pair_id = j.at("pair_id").get<std::string>();
  d.source_path_id = j.at("source_path_id").get<std::string>();
  d.variant = j.at("variant").get<int>();
  d.stage = parse_stage(j.at("stage").get<std::string>());
  d.reason = j.at("reason").get<std::string>();
  d.message = j.value("message", "");
  for (const auto& c : j.value("calls", json::array())) d.calls.push_back(CallRecord::from_json(c));
  return d;
}

json CacheCounts::to_json() const { return {{"live", live}, {"hits", hits}}; }

CacheCounts CacheCounts::from_json(const json& j) {
  CacheCounts c;
  j.at("live").get_to(c.live);
  j.at("hits").get_to(c.hits);
  return c;
}

long CacheCounts::total_live() const {
  long n = 0;
  for (const auto& [role, count] : live) n += count;
  return n;
}

void CacheStats::record(const std::string& role, bool hit) {
  std::lock_guard lock(mu_);
  ++(hit ? counts_.hits : counts_.live)[role];
  (hit ? counts_.live : counts_.hits).try_emplace(role, 0);
}

CacheCounts CacheStats::snapshot() const {
  std::lock_guard lock(mu_);
  return counts_;
}

providers::ProviderSet make_cached_providers(const providers::ProviderSet& inner,
                                             const fs::path& cache_dir,
                                             std::shared_ptr<corpus::ArtifactStore> store,
                                             std::shared_ptr<CacheStats> stats) {
  auto cache = std::make_shared<RequestCache>(cache_dir, std::move(stats));
  return {std::make_shared<CachedCaptioner>(inner.captioner, cache),
          std::make_shared<CachedChat>(inner.chat, cache),
          std::make_shared<CachedEmbedder>(inner.embedder, cache),
          std::make_shared<CachedPanoramaGenerator>(inner.panorama, cache, std::move(store))};
}

std::string augmented_pair_id(const std::string& path_id, int variant) {
  return path_id + "#aug" + std::to_string(variant);
}

json run_pipeline(const RunConfig& config, const PipelineOptions& options) {
  validate(config);
  const auto& root = config.output_root;
  fs::create_directories(root);

  const auto run_doc = json{{"config", fingerprint_config(config)},
                            {"fingerprint", sha256_hex(fingerprint_config(config).dump())}};
  const auto run_file = root / "run.json";
  if (options.resume && fs::exists(run_file)) {
    const auto previous = json::parse(corpus::read_text_file(run_file));
    require(previous.value("fingerprint", "") == run_doc["fingerprint"], ErrorKind::kConfig,
            "cannot resume: " + root.string() + " was produced with a different configuration");
  }
  corpus::write_file_atomic(run_file, run_doc.dump(2) + "\n");

  if (config.stages.augment) {
    const auto dataset = corpus::load_dataset(config.dataset_root, config.split, config.flavor);
    std::vector<const corpus::TrajectoryInstructionPair*> pairs;
    for (const auto& p : dataset.pairs) {
      if (config.limit && pairs.size() >= *config.limit) break;
      pairs.push_back(&p);
    }

    auto store = std::make_shared<corpus::ArtifactStore>(root);
    auto stats = std::make_shared<CacheStats>();
    const auto base = options.providers
                          ? *options.providers
                          : providers::make_providers(config.providers, options.transport, options.sleeper);
    Context ctx{config,
                dataset,
                make_cached_providers(base, root / "cache", store, stats),
                store,
                config.scene_template ? rewrite::load_scene_template(*config.scene_template)
                                      : rewrite::default_scene_template(),
                config.instruction_template
                    ? rewrite::load_instruction_template(*config.instruction_template)
                    : rewrite::default_instruction_template(),
                options.hooks,
                root / "checkpoints"};
    fs::create_directories(ctx.checkpoint_dir);

    const auto k = static_cast<std::size_t>(config.augmentations_per_pair);
    const std::size_t total = pairs.size() * k;
    std::vector<Outcome> outcomes(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::mutex error_mu;
    std::exception_ptr error;

    auto worker = [&] {
      for (;;) {
        const auto i = next.fetch_add(1);
        if (i >= total || abort.load()) return;
        const auto& pair = *pairs[i / k];
        const int variant = static_cast<int>(i % k);
        try {
          const auto id = augmented_pair_id(pair.path_id, variant);
          if (auto cp = options.resume ? read_checkpoint(ctx, id) : std::nullopt) {
            outcomes[i] = std::move(*cp);
            continue;
          }
          outcomes[i] = run_variant(ctx, pair, variant);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          abort = true;
          return;
        }
      }
    };
    const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(config.workers),
                                                 std::max<std::size_t>(total, 1));
    if (n_workers <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < n_workers; ++w) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<corpus::ManifestEntry> entries;
    std::string drops;
    for (const auto& o : outcomes) {
      if (o.entry) entries.push_back(*o.entry);
      if (o.drop) drops += o.drop->to_json().dump() + "\n";
    }
    corpus::write_manifest(root / "augment.jsonl", entries);
    corpus::write_file_atomic(root / "drops.jsonl", drops);
    const json run_stats{{"inputs", pairs.size()},
                         {"augmentations_per_pair", config.augmentations_per_pair},
                         {"requested", total},
                         {"cache", stats->snapshot().to_json()}};
    corpus::write_file_atomic(root / "run_stats.json", run_stats.dump(2) + "\n");
    spdlog::info("augment: {} of {} variants completed, {} live provider calls", entries.size(),
                 total, stats->snapshot().total_live());
  }

  if (config.stages.cropmix) run_cropmix(config);
  if (config.stages.schedule) build_manifests(config);

  auto summary = report::summarize_run(root);
  corpus::write_file_atomic(root / "report.json", summary.dump(2) + "\n");
  return summary;
}

corpus::ManifestEntry cropmix_bundle(corpus::ArtifactStore& store, const corpus::RewriteBundle& bundle,
                                     std::uint64_t seed, const cropmix::CropMixOptions& options) {
  std::vector<corpus::Panorama> pool;
  for (const auto& ref : bundle.panorama_refs) {
    pool.push_back(corpus::make_panorama(store.get_png(ref), corpus::PanoramaSource::kGenerated));
  }
  const auto mixed = cropmix::crop_mix_with_plans(pool, static_cast<int>(pool.size()), seed, options);
  json panoramas = json::array();
  json plans = json::array();
  for (const auto& m : mixed) {
    panoramas.push_back(store.put_png(m.panorama.image).sha256);
    plans.push_back(cropmix::to_json(m.plan));
  }
  const json record{{"kind", "cropmixed"},
                    {"pair_id", bundle.pair_id},
                    {"seed", seed},
                    {"sources", bundle.panorama_refs},
                    {"panoramas", panoramas},
                    {"plans", plans}};
  const auto ref = store.put_json(record);
  return {"cropmix", ref.sha256, ref.path, {{"pair_id", bundle.pair_id}, {"seed", seed}, {"steps", pool.size()}}};
}

std::vector<corpus::ManifestEntry> run_cropmix(const RunConfig& config) {
  auto store = open_store(config);
  std::vector<corpus::ManifestEntry> entries;
  for (const auto& b : load_bundles(store, config.output_root)) {
    entries.push_back(cropmix_bundle(store, b, schedule::cropmix_seed(config.seed_value(), b.pair_id),
                                     config.cropmix));
  }
  corpus::write_manifest(config.output_root / "cropmix.jsonl", entries);
  spdlog::info("cropmix: {} bundles mixed", entries.size());
  return entries;
}

std::pair<schedule::StageManifest, schedule::StageManifest> build_manifests(const RunConfig& config) {
  auto store = open_store(config);
  const auto dataset = corpus::load_dataset(config.dataset_root, config.split, config.flavor);

  std::vector<schedule::TrainingItem> originals;
  std::size_t used = 0;
  for (const auto& p : dataset.pairs) {
    if (config.limit && used++ >= *config.limit) break;
    const auto obs = store.put_json({{"kind", "captured"}, {"scan", p.scan_id}, {"viewpoints", p.viewpoints}});
    for (std::size_t k = 0; k < p.instructions.size(); ++k) {
      originals.push_back({p.path_id + "#i" + std::to_string(k), schedule::Origin::kOriginal,
                           obs.sha256, store.put_text(p.instructions[k]).sha256});
    }
  }

  std::vector<schedule::TrainingItem> rewritten;
  std::map<std::string, corpus::RewriteBundle> by_id;
  for (auto& b : load_bundles(store, config.output_root)) {
    const auto obs = store.put_json({{"kind", "generated"}, {"pair_id", b.pair_id}, {"panoramas", b.panorama_refs}});
    rewritten.push_back({b.pair_id, schedule::Origin::kRewritten, obs.sha256,
                         store.put_text(b.rewritten_instruction).sha256});
    by_id.emplace(b.pair_id, std::move(b));
  }

  schedule::CropMixConfig cm;
  cm.enabled = config.stages.cropmix;
  cm.hook = [&](const schedule::TrainingItem& item, std::uint64_t seed) {
    return cropmix_bundle(store, by_id.at(item.pair_id), seed, config.cropmix).sha256;
  };
  const auto seed = config.seed_value();
  auto stage1 = schedule::build_stage1(originals, rewritten, config.mix_ratio, seed, cm,
                                       config.schedule_epochs, config.hints);
  auto stage2 = schedule::build_stage2(originals, seed, config.resume, config.schedule_epochs, config.hints);
  schedule::write_stage_manifest(config.output_root / "stage1.jsonl", stage1);
  schedule::write_stage_manifest(config.output_root / "stage2.jsonl", stage2);
  spdlog::info("schedule: stage 1 has {} entries, stage 2 has {}", stage1.entries.size(),
               stage2.entries.size());
  return {std::move(stage1), std::move(stage2)};
}

}  // namespace vlnaug::pipeline
