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

// vlnaug command-line tool.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "vlnaug/config.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/navmetrics.hpp"
#include "vlnaug/pipeline.hpp"
#include "vlnaug/report.hpp"
#include "vlnaug/store.hpp"
#include "vlnaug/toy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vlnaug;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool resume = false;
};

RunConfig load(const CommonFlags& f) {
  require(!f.config.empty(), ErrorKind::kConfig, "--config is required");
  auto c = load_config(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.workers) c.workers = *f.workers;
  validate(c);
  return c;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool run_flags) {
  cmd->add_option("--config", f.config, "Run configuration (JSON)");
  cmd->add_option("--seed", f.seed, "Override the configured seed");
  if (run_flags) {
    cmd->add_option("--workers", f.workers, "Concurrent trajectory workers")->check(CLI::PositiveNumber);
    cmd->add_flag("--resume", f.resume, "Skip variants finished by an earlier run");
  }
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_ingest(const CommonFlags& f, const std::string& root_override, const std::string& split,
               const std::string& flavor) {
  fs::path root = root_override;
  auto sp = corpus::parse_split(split);
  auto fl = corpus::parse_flavor(flavor);
  std::optional<RunConfig> cfg;
  if (!f.config.empty()) {
    cfg = load(f);
    if (root.empty()) root = cfg->dataset_root;
    sp = cfg->split;
    fl = cfg->flavor;
  }
  require(!root.empty(), ErrorKind::kConfig, "ingest needs --config or --dataset");
  const auto ds = corpus::load_dataset(root, sp, fl);
  std::size_t instructions = 0, nodes = 0, edges = 0;
  for (const auto& p : ds.pairs) instructions += p.instructions.size();
  for (const auto& [scan, g] : ds.graphs) {
    nodes += g.node_count();
    edges += g.edge_count();
  }
  const json summary{{"dataset", root.string()},
                     {"split", corpus::to_string(sp)},
                     {"flavor", corpus::to_string(fl)},
                     {"pairs", ds.pairs.size()},
                     {"instructions", instructions},
                     {"scans", ds.graphs.size()},
                     {"nodes", nodes},
                     {"edges", edges}};
  if (cfg) {
    fs::create_directories(cfg->output_root);
    corpus::write_file_atomic(cfg->output_root / "ingest.json", summary.dump(2) + "\n");
  }
  print_json(summary);
  return kExitOk;
}

int cmd_augment(const CommonFlags& f, bool full) {
  auto cfg = load(f);
  if (!full) cfg.stages = {true, false, false};
  pipeline::PipelineOptions opts;
  opts.resume = f.resume;
  const auto summary = pipeline::run_pipeline(cfg, opts);
  std::cout << report::format_summary(summary);
  return kExitOk;
}

int cmd_eval(const CommonFlags& f, std::string dataset, const std::string& episodes,
             const std::string& out, double radius) {
  if (dataset.empty() && !f.config.empty()) dataset = load(f).dataset_root.string();
  require(!dataset.empty(), ErrorKind::kConfig, "eval needs --dataset or --config");
  std::map<std::string, corpus::ConnectivityGraph> graphs;
  std::map<std::string, std::unique_ptr<navmetrics::ShortestPaths>> paths;
  std::vector<navmetrics::Metrics> all;
  json per_episode = json::array();
  for (const auto& ep : corpus::read_jsonl(episodes)) {
    const auto scan = ep.at("scan").get<std::string>();
    if (!graphs.contains(scan)) {
      graphs.emplace(scan, corpus::load_connectivity(dataset, scan));
      paths.emplace(scan, std::make_unique<navmetrics::ShortestPaths>(graphs.at(scan)));
    }
    navmetrics::EpisodeResult r{ep.at("predicted").get<std::vector<std::string>>(),
                                ep.at("gt").get<std::vector<std::string>>()};
    const auto m = navmetrics::evaluate(r, *paths.at(scan), radius);
    all.push_back(m);
    auto row = navmetrics::to_json(m);
    row["id"] = ep.value("id", std::to_string(per_episode.size()));
    per_episode.push_back(row);
  }
  const json result{{"episodes", all.size()},
                    {"success_radius_m", radius},
                    {"mean", navmetrics::to_json(navmetrics::mean(all))},
                    {"per_episode", per_episode}};
  if (!out.empty()) corpus::write_file_atomic(out, result.dump(2) + "\n");
  print_json(result["mean"]);
  return kExitOk;
}

int cmd_report(const CommonFlags& f, std::string root, bool as_json) {
  if (root.empty()) root = load(f).output_root.string();
  const auto summary = report::summarize_run(root);
  if (as_json) {
    print_json(summary);
  } else {
    std::cout << report::format_summary(summary);
  }
  return kExitOk;
}

int cmd_toy(const std::string& out, int pairs, int width, std::uint64_t seed) {
  const fs::path root = out;
  toy::write_toy_dataset(root / "data", {pairs, width, seed});
  const auto cfg = toy::toy_config("data", "run", seed);
  corpus::write_file_atomic(root / "config.json", cfg.dump(2) + "\n");
  std::cout << "wrote " << (root / "data").string() << " and " << (root / "config.json").string()
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vlnaug: trajectory-instruction rewriting and training-manifest tool"};
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false, quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Warnings and errors only");

  CommonFlags f;
  std::string dataset, split = "train", flavor = "R2R", episodes, out, root;
  double radius = navmetrics::kSuccessRadiusM;
  bool as_json = false;
  int pairs = 5, width = 256;
  std::uint64_t toy_seed = 7;

  auto* ingest = app.add_subcommand("ingest", "Load and validate a dataset");
  add_common(ingest, f, false);
  ingest->add_option("--dataset", dataset, "Dataset root (instead of --config)");
  ingest->add_option("--split", split, "train | val_seen | val_unseen | test");
  ingest->add_option("--flavor", flavor, "R2R | REVERIE | R4R");

  auto* augment = app.add_subcommand("augment", "Rewrite every trajectory-instruction pair");
  add_common(augment, f, true);
  auto* run = app.add_subcommand("run", "augment, then cropmix and schedule as configured");
  add_common(run, f, true);

  auto* cropmix = app.add_subcommand("cropmix", "Crop-mix the generated panoramas of a run");
  add_common(cropmix, f, false);
  auto* schedule = app.add_subcommand("schedule", "Write the stage-1 and stage-2 manifests");
  add_common(schedule, f, false);

  auto* eval = app.add_subcommand("eval", "Navigation metrics for episodes (JSONL)");
  add_common(eval, f, false);
  eval->add_option("--dataset", dataset, "Dataset root holding connectivity/");
  eval->add_option("--episodes", episodes, "JSONL with scan, predicted, gt[, id]")->required();
  eval->add_option("--out", out, "Write per-episode and mean metrics here");
  eval->add_option("--radius", radius, "Success radius in meters")->check(CLI::PositiveNumber);

  auto* rep = app.add_subcommand("report", "Summarize a run");
  add_common(rep, f, false);
  rep->add_option("--root", root, "Run root (instead of --config)");
  rep->add_flag("--json", as_json, "Print the JSON summary");

  auto* toy_cmd = app.add_subcommand("toy", "Write a small synthetic dataset and config");
  toy_cmd->add_option("--out", out, "Target directory")->required();
  toy_cmd->add_option("--pairs", pairs, "Number of trajectories")->check(CLI::PositiveNumber);
  toy_cmd->add_option("--width", width, "Panorama width in pixels");
  toy_cmd->add_option("--seed", toy_seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  // stdout carries command output (JSON for ingest, eval and report --json).
  spdlog::set_default_logger(spdlog::stderr_color_mt("vlnaug"));
  spdlog::set_level(verbose ? spdlog::level::debug : quiet ? spdlog::level::warn : spdlog::level::info);

  try {
    if (*ingest) return cmd_ingest(f, dataset, split, flavor);
    if (*augment) return cmd_augment(f, false);
    if (*run) return cmd_augment(f, true);
    if (*cropmix) {
      const auto entries = pipeline::run_cropmix(load(f));
      std::cout << entries.size() << " crop-mixed observation sets\n";
      return kExitOk;
    }
    if (*schedule) {
      const auto [s1, s2] = pipeline::build_manifests(load(f));
      std::cout << "stage1: " << s1.entries.size() << " entries, stage2: " << s2.entries.size()
                << " entries\n";
      return kExitOk;
    }
    if (*eval) return cmd_eval(f, dataset, episodes, out, radius);
    if (*rep) return cmd_report(f, root, as_json);
    if (*toy_cmd) return cmd_toy(out, pairs, width, toy_seed);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  }
  return kExitConfig;
}
