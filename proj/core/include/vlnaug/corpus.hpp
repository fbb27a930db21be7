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

// Dataset model for trajectory-instruction corpora in the R2R file
// convention, plus panorama rasters.
//
// On-disk layout of a dataset root:
//   <root>/<FLAVOR>_<split>.json                 trajectory file
//   <root>/connectivity/<scan>_connectivity.json per-scan navigation graph
//   <root>/panoramas/<scan>/<viewpoint>.png      equirectangular RGB8
//
// Positions are kept in a y-up frame (x right, y up, z forward). Matterport
// poses are z-up and get swizzled on load.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "vlnaug/image.hpp"

namespace vlnaug::corpus {

using ViewpointId = std::string;

class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;
  explicit ConnectivityGraph(std::string scan_id) : scan_id_(std::move(scan_id)) {}

  const std::string& scan_id() const { return scan_id_; }

  void add_node(const ViewpointId& id, const Eigen::Vector3d& position);
  /// Undirected edge weighted by Euclidean distance between the endpoints.
  void add_edge(const ViewpointId& a, const ViewpointId& b);
  /// Undirected edge with an explicit length in meters (> 0).
  void add_edge(const ViewpointId& a, const ViewpointId& b, double distance_m);

  bool has_node(const ViewpointId& id) const { return nodes_.contains(id); }
  const Eigen::Vector3d& position(const ViewpointId& id) const;
  bool adjacent(const ViewpointId& a, const ViewpointId& b) const;
  std::optional<double> edge_distance(const ViewpointId& a, const ViewpointId& b) const;
  /// Neighbor → edge length. Empty for unknown nodes.
  const std::map<ViewpointId, double>& neighbors(const ViewpointId& id) const;

  std::vector<ViewpointId> node_ids() const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const;

  /// True when every listed viewpoint lies in one connected component.
  bool connected(const std::vector<ViewpointId>& among) const;

 private:
  std::string scan_id_;
  std::map<ViewpointId, Eigen::Vector3d> nodes_;
  std::map<ViewpointId, std::map<ViewpointId, double>> adjacency_;
};

enum class Split { kTrain, kValSeen, kValUnseen, kTest };
std::string_view to_string(Split split);
Split parse_split(std::string_view name);

/// Which benchmark the trajectory file comes from. All share the R2R schema;
/// the flavor only changes the filename prefix and the instruction style tag.
enum class Flavor { kR2R, kREVERIE, kR4R };
std::string_view to_string(Flavor flavor);
Flavor parse_flavor(std::string_view name);

enum class InstructionStyle { kStepByStep, kHighLevel };

struct TrajectoryInstructionPair {
  std::string path_id;
  std::string scan_id;
  std::vector<ViewpointId> viewpoints;
  double initial_heading_deg = 0.0;
  std::vector<std::string> instructions;
  InstructionStyle style = InstructionStyle::kStepByStep;

  /// Navigation step count T.
  std::size_t steps() const { return viewpoints.size(); }
  friend bool operator==(const TrajectoryInstructionPair&,
                         const TrajectoryInstructionPair&) = default;
};

enum class PanoramaSource { kCaptured, kGenerated, kCropMixed };
std::string_view to_string(PanoramaSource source);
PanoramaSource parse_panorama_source(std::string_view name);

struct Panorama {
  Image image;
  PanoramaSource source = PanoramaSource::kCaptured;
  std::optional<std::uint64_t> seed;

  int width() const { return image.width; }
  int height() const { return image.height; }
  friend bool operator==(const Panorama&, const Panorama&) = default;
};

/// Throws kValidation unless width == 2 * height > 0.
void validate_panorama(const Panorama& pano);
Panorama make_panorama(Image image, PanoramaSource source,
                       std::optional<std::uint64_t> seed = std::nullopt);

struct Dataset {
  std::filesystem::path root;
  Split split = Split::kTrain;
  Flavor flavor = Flavor::kR2R;
  std::vector<TrajectoryInstructionPair> pairs;
  std::map<std::string, ConnectivityGraph> graphs;

  const ConnectivityGraph& graph(const std::string& scan_id) const;
  std::filesystem::path panorama_path(const std::string& scan_id,
                                      const ViewpointId& viewpoint) const;
  Panorama load_panorama(const std::string& scan_id, const ViewpointId& viewpoint) const;
};

std::filesystem::path trajectory_file(const std::filesystem::path& root, Split split,
                                      Flavor flavor = Flavor::kR2R);
std::filesystem::path connectivity_file(const std::filesystem::path& root,
                                        const std::string& scan_id);

/// Parses one Matterport-style connectivity JSON document.
ConnectivityGraph parse_connectivity(const std::string& scan_id, std::string_view json_text);
ConnectivityGraph load_connectivity(const std::filesystem::path& root,
                                    const std::string& scan_id);

/// Parses a trajectory JSON document without graph validation.
std::vector<TrajectoryInstructionPair> parse_trajectories(std::string_view json_text,
                                                          Flavor flavor = Flavor::kR2R);

/// Every pair is checked against its scan graph (node existence, step
/// adjacency, connectivity). Any violation fails the whole load.
void validate_pair(const TrajectoryInstructionPair& pair, const ConnectivityGraph& graph);

Dataset load_dataset(const std::filesystem::path& root, Split split,
                     Flavor flavor = Flavor::kR2R);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace vlnaug::corpus
