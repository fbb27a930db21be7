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

// Acceptance checks. One PASS/FAIL line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "cropmix_checks.hpp"
#include "fixtures.hpp"
#include "graphs.hpp"
#include "grounding_cases.hpp"
#include "oracles.hpp"
#include "vlnaug/bundle.hpp"
#include "vlnaug/config.hpp"
#include "vlnaug/cropmix.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/grounding.hpp"
#include "vlnaug/navmetrics.hpp"
#include "vlnaug/panogeom.hpp"
#include "vlnaug/pipeline.hpp"
#include "vlnaug/schedule.hpp"
#include "vlnaug/store.hpp"
#include "vlnaug/toy.hpp"

namespace {

using namespace vlnaug;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Collects failed sub-checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) os << (i ? "; " : "") << failures_[i];
    if (failures_.size() > 5) os << "; +" << failures_.size() - 5 << " more";
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

corpus::Panorama pano_of(int height, std::uint64_t seed) {
  return corpus::make_panorama(testutil::synthetic_pano(height, seed), corpus::PanoramaSource::kCaptured);
}

void geometry(Check& c) {
  using panogeom::CameraParams;
  const auto t0 = Clock::now();
  const auto pano = pano_of(64, 9);
  const CameraParams configs[] = {
      {60, 0, 0, 48, 48},     {60, 90, 0, 48, 48},   {60, 180, 30, 48, 48},
      {60, 270, -30, 48, 48}, {90, 45, 10, 64, 40},  {30, 315, -45, 32, 32},
      {120, 200, 60, 50, 50}, {45, -30, -70, 40, 24}, {100, 359.5, 85, 48, 48}};
  for (const auto& p : configs) {
    const auto got = panogeom::equirec_to_perspective(pano, p);
    const auto want =
        oracle::perspective(pano.image, p.fov_deg, p.heading_deg, p.elevation_deg, p.out_width, p.out_height);
    const int d = max_abs_diff(got, want);
    c.expect(d <= 1, "heading " + std::to_string(p.heading_deg) + " diff " + std::to_string(d));
  }
  const double s = seconds_since(t0);
  c.expect(s < 10.0, "took " + std::to_string(s) + " s");
}

void discretization(Check& c) {
  using namespace panogeom;
  const auto pano = pano_of(72, 8);
  const auto a = discretize_panorama(pano, 60, 32);
  c.expect(a.views.size() == 36, "view count " + std::to_string(a.views.size()));
  std::set<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < a.views.size(); ++i) {
    const auto& v = a.views[i];
    cells.insert({v.heading_index, v.elevation_index});
    c.expect(view_index(v.heading_index, v.elevation_index) == static_cast<int>(i), "index " + std::to_string(i));
    const auto cam = view_camera(static_cast<int>(i), 60, 32);
    c.expect(cam.heading_deg == 30.0 * v.heading_index, "heading of " + std::to_string(i));
    c.expect(cam.elevation_deg == 30.0 * (v.elevation_index - 1), "elevation of " + std::to_string(i));
  }
  c.expect(cells.size() == 36, "distinct cells");
  // Other sizes too.
  c.expect(discretize_panorama(pano_of(16, 1), 60, 8).views.size() == 36, "small panorama");

  const auto rolled =
      corpus::make_panorama(roll_columns(pano.image, pano.width() / 12), corpus::PanoramaSource::kCaptured);
  const auto b = discretize_panorama(rolled, 60, 32);
  for (int e = 0; e < 3; ++e)
    for (int h = 0; h < 12; ++h) {
      const int d = max_abs_diff(b.views[view_index((h + 1) % 12, e)].image, a.views[view_index(h, e)].image);
      c.expect(d <= 1, "shift at " + std::to_string(h) + "," + std::to_string(e) + " diff " + std::to_string(d));
    }
}

void grounding_oracle(Check& c) {
  const auto t0 = Clock::now();
  int ties = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    testutil::TableEmbedder emb;
    const auto k = testutil::make_grounding_case(seed, emb);
    c.expect(k.landmarks.items.size() <= 10 && k.views.size() <= 10, "case size " + std::to_string(seed));
    const auto got = grounding::ground_landmarks(k.views, k.landmarks, emb);
    const auto want = oracle::argmax_grounding(k.image_vecs, k.text_vecs);
    c.expect(got.indices == want, "seed " + std::to_string(seed));
    ties += k.has_tie;
  }
  c.expect(ties > 0, "no tie cases generated");
  const double s = seconds_since(t0);
  c.expect(s < 5.0, "took " + std::to_string(s) + " s");
}

struct Killed {};

void pipeline_runs(Check& c) {
  testutil::TempDir dir("vlnaug-accept");
  toy::write_toy_dataset(dir.path() / "data", {});
  auto cfg = [&](const std::string& out) {
    return config_from_json(toy::toy_config(dir.path() / "data", dir.path() / out, 42));
  };

  const auto a = pipeline::run_pipeline(cfg("a"));
  pipeline::run_pipeline(cfg("b"));
  c.expect(a["counts"]["augmented"] == 15, "augmented " + a["counts"]["augmented"].dump());
  corpus::ArtifactStore store(dir.path() / "a");
  std::size_t instructions = 0;
  for (const auto& e : corpus::read_manifest(dir.path() / "a" / "augment.jsonl"))
    instructions += !corpus::load_bundle(store, e).rewritten_instruction.empty();
  c.expect(instructions == 15, "instructions " + std::to_string(instructions));

  const auto da = testutil::tree_digest(dir.path() / "a", {"run.json"});
  c.expect(da == testutil::tree_digest(dir.path() / "b", {"run.json"}), "same-seed runs differ");

  const std::set<std::string> local{"run_stats.json", "report.json"};
  pipeline::PipelineOptions kill;
  kill.hooks.on_stage_complete = [](const std::string& id, pipeline::Stage s) {
    if (id == "toy1002#aug1" && s == pipeline::Stage::kGround) throw Killed{};
  };
  bool killed = false;
  try {
    pipeline::run_pipeline(cfg("k"), kill);
  } catch (const Killed&) {
    killed = true;
  }
  c.expect(killed, "kill hook did not fire");
  pipeline::PipelineOptions resume;
  resume.resume = true;
  pipeline::run_pipeline(cfg("k"), resume);
  c.expect(testutil::tree_digest(dir.path() / "k", local) == testutil::tree_digest(dir.path() / "a", local),
           "resumed run differs");
}

void schedule_defaults(Check& c) {
  const RunConfig defaults;
  c.expect(defaults.mix_ratio == schedule::MixRatio{1, 3}, "default ratio");
  c.expect(defaults.stages.cropmix, "crop-mix disabled by default");
  c.expect(defaults.augmentations_per_pair == 3, "default augmentations");

  std::vector<schedule::TrainingItem> originals, rewritten;
  for (int i = 0; i < 40; ++i)
    originals.push_back({"o" + std::to_string(i), schedule::Origin::kOriginal, "obs", "ins"});
  for (int i = 0; i < 70; ++i)
    rewritten.push_back({"r" + std::to_string(i), schedule::Origin::kRewritten, "obs", "ins"});
  int hook_calls = 0;
  schedule::CropMixConfig cm;
  cm.enabled = defaults.stages.cropmix;
  cm.hook = [&](const schedule::TrainingItem& item, std::uint64_t) {
    ++hook_calls;
    return "mixed:" + item.pair_id;
  };
  const int epochs = 3;
  const auto s1 = schedule::build_stage1(originals, rewritten, defaults.mix_ratio, 5, cm, epochs);
  const auto s2 = schedule::build_stage2(originals, 5);
  c.expect(s1.cropmix && s1.mix_ratio == schedule::MixRatio{1, 3}, "stage-1 header");
  c.expect(hook_calls > 0, "rewritten items not crop-mixed");
  for (int e = 0; e < epochs; ++e) {
    long o = 0, r = 0;
    for (const auto& x : s1.entries) {
      if (x.epoch != e) continue;
      (x.item.origin == schedule::Origin::kOriginal ? o : r) += 1;
      if (x.item.origin == schedule::Origin::kRewritten)
        c.expect(x.item.observation_ref == "mixed:" + x.item.pair_id, "unmixed rewritten item");
    }
    c.expect(std::abs(static_cast<double>(r) - 3.0 * static_cast<double>(o)) <= 1.0,
             "epoch " + std::to_string(e) + " ratio " + std::to_string(o) + ":" + std::to_string(r));
  }
  long impure = 0;
  for (const auto& x : s2.entries) impure += x.item.origin != schedule::Origin::kOriginal;
  c.expect(impure == 0, "stage-2 rewritten entries " + std::to_string(impure));
  c.expect(s2.resume.has_value(), "stage-2 resume marker");
  for (const auto* m : {&s1, &s2}) {
    c.expect(m->hints.max_iterations == 20000 && m->hints.batch_size == 8 && m->hints.learning_rate == 1e-5,
             "trainer hints");
    schedule::validate(*m);
  }
}

void cropmix_props(Check& c) {
  const auto pool = testutil::cropmix_pool(3, 32, 7);
  int dims = 0, multi = 0, same = 0, provenance = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto out = cropmix::crop_mix_with_plans(pool, 3, seed);
    const auto again = cropmix::crop_mix_with_plans(pool, 3, seed);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& m = out[i];
      ++total;
      dims += m.panorama.width() == 64 && m.panorama.height() == 32;
      multi += testutil::distinct_sources(m.plan) >= 2;
      same += m.panorama.image == again[i].panorama.image;
      provenance += testutil::pixel_provenance_ok(pool, m.plan, m.panorama.image);
    }
  }
  c.expect(total == 300, "outputs " + std::to_string(total));
  c.expect(dims == total, "dimensions " + std::to_string(dims));
  c.expect(multi == total, "multi-source " + std::to_string(multi));
  c.expect(same == total, "determinism " + std::to_string(same));
  c.expect(provenance == total, "provenance " + std::to_string(provenance));
}

corpus::ConnectivityGraph line_graph(int n, double spacing) {
  corpus::ConnectivityGraph g("line");
  for (int i = 0; i < n; ++i) g.add_node(std::string(1, static_cast<char>('A' + i)), {spacing * i, 0, 0});
  for (int i = 1; i < n; ++i)
    g.add_edge(std::string(1, static_cast<char>('A' + i - 1)), std::string(1, static_cast<char>('A' + i)));
  return g;
}

void metrics(Check& c) {
  using navmetrics::evaluate;
  const auto line = line_graph(4, 2.0);
  const auto id = evaluate({{"A", "B", "C"}, {"A", "B", "C"}}, line);
  c.expect(std::abs(id.sr - 1) <= 1e-9 && std::abs(id.spl - 1) <= 1e-9 && std::abs(id.ndtw - 1) <= 1e-9,
           "identity episode");

  corpus::ConnectivityGraph g("b");
  g.add_node("s", {0, 0, 0});
  g.add_node("goal", {0, 0, 2.9});
  g.add_node("far", {0, 0, 6.0});
  g.add_edge("s", "goal");
  g.add_edge("goal", "far");
  c.expect(evaluate({{"s"}, {"s", "goal"}}, g).sr == 1.0, "2.9 m counted as failure");
  c.expect(evaluate({{"s", "goal", "far"}, {"s", "goal"}}, g).sr == 0.0, "3.1 m counted as success");

  c.expect(oracle::shortest_by_enumeration(testutil::adjacency_of(line), "A", "C") == 4.0, "oracle distance");
  c.expect(evaluate({{"A", "B", "C", "D", "C"}, {"A", "B", "C"}}, line).spl == 0.5, "detour SPL");

  int bad = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto r = testutil::random_episode(seed);
    const auto m = evaluate(r.episode, r.graph);
    bad += !(m.spl <= m.sr + 1e-12 && m.sdtw <= m.ndtw + 1e-12);
  }
  c.expect(bad == 0, "inequality violations " + std::to_string(bad));
}

void mocks_only(Check& c) {
  testutil::TempDir dir("vlnaug-accept-mock");
  toy::write_toy_dataset(dir.path() / "data", {});
  const auto config = config_from_json(toy::toy_config(dir.path() / "data", dir.path() / "run", 42));
  for (const auto* p : {&config.providers.captioner, &config.providers.chat, &config.providers.embedder,
                        &config.providers.panorama})
    c.expect(p->kind == providers::ProviderKind::kMock, "non-mock provider configured");
  const auto summary = pipeline::run_pipeline(config);
  c.expect(summary["counts"]["augmented"] == 15, "toy run incomplete");
  corpus::ArtifactStore store(dir.path() / "run");
  for (const auto& e : corpus::read_manifest(dir.path() / "run" / "augment.jsonl"))
    for (const auto& call : corpus::load_bundle(store, e).provenance)
      c.expect(call.provider_id.rfind("mock", 0) == 0, "call to " + call.provider_id);
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"geometry oracle", geometry},
      {"discretization", discretization},
      {"grounding oracle", grounding_oracle},
      {"pipeline determinism and cardinality", pipeline_runs},
      {"schedule", schedule_defaults},
      {"cropmix", cropmix_props},
      {"metrics", metrics},
      {"mock providers only", mocks_only},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS " : "FAIL ") << name;
    if (!c.ok()) {
      std::cout << ": " << c.detail();
      ++failed;
    }
    std::cout << std::endl;
  }
  return failed;
}
