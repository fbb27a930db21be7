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

#include "vlnaug/corpus.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vlnaug/error.hpp"

namespace vlnaug::corpus {

using nlohmann::json;

void ConnectivityGraph::add_node(const ViewpointId& id, const Eigen::Vector3d& position) {
  require(!id.empty(), ErrorKind::kValidation, "graph " + scan_id_ + ": empty viewpoint id");
  require(position.allFinite(), ErrorKind::kValidation,
          "graph " + scan_id_ + ": non-finite position for " + id);
  nodes_[id] = position;
  adjacency_.try_emplace(id);
}

void ConnectivityGraph::add_edge(const ViewpointId& a, const ViewpointId& b) {
  require(has_node(a) && has_node(b), ErrorKind::kValidation,
          "graph " + scan_id_ + ": edge endpoint missing (" + a + ", " + b + ")");
  add_edge(a, b, (nodes_.at(a) - nodes_.at(b)).norm());
}

void ConnectivityGraph::add_edge(const ViewpointId& a, const ViewpointId& b, double distance_m) {
  require(has_node(a) && has_node(b), ErrorKind::kValidation,
          "graph " + scan_id_ + ": edge endpoint missing (" + a + ", " + b + ")");
  require(a != b, ErrorKind::kValidation, "graph " + scan_id_ + ": self loop at " + a);
  require(distance_m > 0.0 && std::isfinite(distance_m), ErrorKind::kValidation,
          "graph " + scan_id_ + ": non-positive edge length " + a + "-" + b);
  adjacency_[a][b] = distance_m;
  adjacency_[b][a] = distance_m;
}

const Eigen::Vector3d& ConnectivityGraph::position(const ViewpointId& id) const {
  auto it = nodes_.find(id);
  require(it != nodes_.end(), ErrorKind::kValidation,
          "graph " + scan_id_ + ": unknown viewpoint " + id);
  return it->second;
}

bool ConnectivityGraph::adjacent(const ViewpointId& a, const ViewpointId& b) const {
  return edge_distance(a, b).has_value();
}

std::optional<double> ConnectivityGraph::edge_distance(const ViewpointId& a,
                                                       const ViewpointId& b) const {
  auto it = adjacency_.find(a);
  if (it == adjacency_.end()) return std::nullopt;
  auto jt = it->second.find(b);
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

const std::map<ViewpointId, double>& ConnectivityGraph::neighbors(const ViewpointId& id) const {
  static const std::map<ViewpointId, double> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

std::vector<ViewpointId> ConnectivityGraph::node_ids() const {
  std::vector<ViewpointId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  return ids;
}

std::size_t ConnectivityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [_, nbrs] : adjacency_) twice += nbrs.size();
  return twice / 2;
}

bool ConnectivityGraph::connected(const std::vector<ViewpointId>& among) const {
  if (among.empty()) return true;
  std::set<ViewpointId> seen{among.front()};
  std::queue<ViewpointId> frontier;
  frontier.push(among.front());
  while (!frontier.empty()) {
    const ViewpointId cur = frontier.front();
    frontier.pop();
    for (const auto& [nbr, _] : neighbors(cur)) {
      if (seen.insert(nbr).second) frontier.push(nbr);
    }
  }
  return std::all_of(among.begin(), among.end(),
                     [&](const ViewpointId& v) { return seen.contains(v); });
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kValSeen: return "val_seen";
    case Split::kValUnseen: return "val_unseen";
    case Split::kTest: return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "val_seen") return Split::kValSeen;
  if (name == "val_unseen") return Split::kValUnseen;
  if (name == "test") return Split::kTest;
  fail(ErrorKind::kConfig, "unknown split '" + std::string(name) + "'");
}

std::string_view to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::kR2R: return "R2R";
    case Flavor::kREVERIE: return "REVERIE";
    case Flavor::kR4R: return "R4R";
  }
  return "R2R";
}

Flavor parse_flavor(std::string_view name) {
  if (name == "R2R" || name == "r2r") return Flavor::kR2R;
  if (name == "REVERIE" || name == "reverie") return Flavor::kREVERIE;
  if (name == "R4R" || name == "r4r") return Flavor::kR4R;
  fail(ErrorKind::kConfig, "unknown dataset flavor '" + std::string(name) + "'");
}

std::string_view to_string(PanoramaSource source) {
  switch (source) {
    case PanoramaSource::kCaptured: return "captured";
    case PanoramaSource::kGenerated: return "generated";
    case PanoramaSource::kCropMixed: return "cropmixed";
  }
  return "captured";
}

PanoramaSource parse_panorama_source(std::string_view name) {
  if (name == "captured") return PanoramaSource::kCaptured;
  if (name == "generated") return PanoramaSource::kGenerated;
  if (name == "cropmixed") return PanoramaSource::kCropMixed;
  fail(ErrorKind::kParse, "unknown panorama source '" + std::string(name) + "'");
}

void validate_panorama(const Panorama& pano) {
  require(pano.width() > 0 && pano.height() > 0, ErrorKind::kValidation,
          "panorama has empty raster");
  require(pano.width() == 2 * pano.height(), ErrorKind::kValidation,
          "panorama must be 2:1, got " + std::to_string(pano.width()) + "x" +
              std::to_string(pano.height()));
}

Panorama make_panorama(Image image, PanoramaSource source, std::optional<std::uint64_t> seed) {
  Panorama pano{std::move(image), source, seed};
  validate_panorama(pano);
  return pano;
}

const ConnectivityGraph& Dataset::graph(const std::string& scan_id) const {
  auto it = graphs.find(scan_id);
  require(it != graphs.end(), ErrorKind::kValidation, "no connectivity loaded for " + scan_id);
  return it->second;
}

std::filesystem::path Dataset::panorama_path(const std::string& scan_id,
                                             const ViewpointId& viewpoint) const {
  return root / "panoramas" / scan_id / (viewpoint + ".png");
}

Panorama Dataset::load_panorama(const std::string& scan_id, const ViewpointId& viewpoint) const {
  return make_panorama(read_png(panorama_path(scan_id, viewpoint)), PanoramaSource::kCaptured);
}

std::filesystem::path trajectory_file(const std::filesystem::path& root, Split split,
                                      Flavor flavor) {
  return root / (std::string(to_string(flavor)) + "_" + std::string(to_string(split)) + ".json");
}

std::filesystem::path connectivity_file(const std::filesystem::path& root,
                                        const std::string& scan_id) {
  return root / "connectivity" / (scan_id + "_connectivity.json");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

json parse_json_with_line(std::string_view text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    fail(ErrorKind::kParse, origin + ":" + std::to_string(line) + ": " + e.what());
  }
}

template <typename T>
T field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  require(it != obj.end(), ErrorKind::kValidation, where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::kValidation, where + ": field '" + key + "' has wrong type");
  }
}

}  // namespace

ConnectivityGraph parse_connectivity(const std::string& scan_id, std::string_view json_text) {
  const json doc = parse_json_with_line(json_text, scan_id + "_connectivity.json");
  require(doc.is_array(), ErrorKind::kValidation, scan_id + ": connectivity must be an array");
  ConnectivityGraph graph(scan_id);
  std::vector<std::string> ids;
  std::vector<bool> included;
  std::vector<std::vector<bool>> unobstructed;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = scan_id + " connectivity[" + std::to_string(i) + "]";
    const auto& rec = doc[i];
    const auto id = field<std::string>(rec, "image_id", where);
    const auto pose = field<std::vector<double>>(rec, "pose", where);
    require(pose.size() == 16, ErrorKind::kValidation, where + ": pose must have 16 values");
    ids.push_back(id);
    included.push_back(rec.contains("included") ? field<bool>(rec, "included", where) : true);
    unobstructed.push_back(field<std::vector<bool>>(rec, "unobstructed", where));
    if (included.back()) {
      // Matterport (x, y, z-up) -> (x, y-up, z-forward).
      graph.add_node(id, Eigen::Vector3d(pose[3], pose[11], pose[7]));
    }
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    require(unobstructed[i].size() == ids.size(), ErrorKind::kValidation,
            scan_id + ": unobstructed row for " + ids[i] + " has wrong length");
    if (!included[i]) continue;
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!included[j]) continue;
      if (unobstructed[i][j] || unobstructed[j][i]) graph.add_edge(ids[i], ids[j]);
    }
  }
  return graph;
}

ConnectivityGraph load_connectivity(const std::filesystem::path& root,
                                    const std::string& scan_id) {
  return parse_connectivity(scan_id, read_text_file(connectivity_file(root, scan_id)));
}

std::vector<TrajectoryInstructionPair> parse_trajectories(std::string_view json_text,
                                                          Flavor flavor) {
  const json doc = parse_json_with_line(json_text, "trajectory file");
  require(doc.is_array(), ErrorKind::kValidation, "trajectory file must be a JSON array");
  std::vector<TrajectoryInstructionPair> pairs;
  pairs.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    std::string where = "trajectory[" + std::to_string(i) + "]";
    require(rec.is_object(), ErrorKind::kValidation, where + ": not an object");
    TrajectoryInstructionPair p;
    // R2R stores path_id as an integer; other flavors use strings.
    auto id_it = rec.find("path_id");
    require(id_it != rec.end(), ErrorKind::kValidation, where + ": missing field 'path_id'");
    p.path_id = id_it->is_string() ? id_it->get<std::string>() : id_it->dump();
    where += " (path_id " + p.path_id + ")";
    p.scan_id = field<std::string>(rec, "scan", where);
    p.viewpoints = field<std::vector<std::string>>(rec, "path", where);
    // R2R headings are radians.
    const double heading_rad = field<double>(rec, "heading", where);
    double deg = std::fmod(heading_rad * 180.0 / std::numbers::pi, 360.0);
    if (deg < 0) deg += 360.0;
    p.initial_heading_deg = deg >= 360.0 ? 0.0 : deg;
    p.instructions = field<std::vector<std::string>>(rec, "instructions", where);
    p.style = flavor == Flavor::kREVERIE ? InstructionStyle::kHighLevel
                                         : InstructionStyle::kStepByStep;
    require(p.viewpoints.size() >= 2, ErrorKind::kValidation,
            where + ": path needs at least 2 viewpoints");
    require(!p.instructions.empty(), ErrorKind::kValidation, where + ": no instructions");
    for (const auto& instr : p.instructions) {
      require(!instr.empty(), ErrorKind::kValidation, where + ": empty instruction");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void validate_pair(const TrajectoryInstructionPair& pair, const ConnectivityGraph& graph) {
  const std::string where = "path_id " + pair.path_id;
  for (const auto& vp : pair.viewpoints) {
    require(graph.has_node(vp), ErrorKind::kValidation,
            where + ": viewpoint " + vp + " not in scan " + pair.scan_id);
  }
  for (std::size_t t = 0; t + 1 < pair.viewpoints.size(); ++t) {
    require(graph.adjacent(pair.viewpoints[t], pair.viewpoints[t + 1]), ErrorKind::kValidation,
            where + ": step " + std::to_string(t) + " " + pair.viewpoints[t] + " -> " +
                pair.viewpoints[t + 1] + " is not a graph edge");
  }
}

Dataset load_dataset(const std::filesystem::path& root, Split split, Flavor flavor) {
  Dataset ds;
  ds.root = root;
  ds.split = split;
  ds.flavor = flavor;
  const auto file = trajectory_file(root, split, flavor);
  try {
    ds.pairs = parse_trajectories(read_text_file(file), flavor);
  } catch (const Error& e) {
    throw Error(e.kind(), file.filename().string() + ": " + e.what());
  }

  std::set<std::string> ids;
  std::map<std::string, std::vector<ViewpointId>> used;
  for (const auto& pair : ds.pairs) {
    require(ids.insert(pair.path_id).second, ErrorKind::kValidation,
            "duplicate path_id " + pair.path_id);
    if (!ds.graphs.contains(pair.scan_id)) {
      ds.graphs.emplace(pair.scan_id, load_connectivity(root, pair.scan_id));
    }
    validate_pair(pair, ds.graphs.at(pair.scan_id));
    auto& vps = used[pair.scan_id];
    vps.insert(vps.end(), pair.viewpoints.begin(), pair.viewpoints.end());
  }
  for (const auto& [scan, vps] : used) {
    require(ds.graphs.at(scan).connected(vps), ErrorKind::kValidation,
            "scan " + scan + ": trajectory viewpoints are not connected");
  }
  spdlog::info("loaded {} {} pairs from {} ({} scans)", ds.pairs.size(), to_string(split),
               file.string(), ds.graphs.size());
  return ds;
}

}  // namespace vlnaug::corpus
