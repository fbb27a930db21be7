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

// Navigation metrics over a connectivity graph. Distances are geodesic
// (shortest path over edge lengths, meters).

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlnaug/corpus.hpp"

namespace vlnaug::navmetrics {

inline constexpr double kSuccessRadiusM = 3.0;

struct EpisodeResult {
  std::vector<corpus::ViewpointId> predicted_path;
  std::vector<corpus::ViewpointId> gt_path;
};

struct Metrics {
  double tl = 0;    // trajectory length
  double ne = 0;    // navigation error
  double sr = 0;    // success
  double spl = 0;   // success weighted by path length
  double osr = 0;   // oracle success
  double ndtw = 0;  // normalized dynamic time warping
  double sdtw = 0;  // success weighted nDTW
  double cls = 0;   // coverage weighted by length score
};

nlohmann::json to_json(const Metrics& m);

/// Dijkstra from each queried source, memoized; thread-safe.
class ShortestPaths {
 public:
  explicit ShortestPaths(const corpus::ConnectivityGraph& graph);

  /// kMetric when `to` is unreachable from `from`.
  double distance(const corpus::ViewpointId& from, const corpus::ViewpointId& to) const;
  const corpus::ConnectivityGraph& graph() const { return graph_; }

 private:
  const std::map<corpus::ViewpointId, double>& table(const corpus::ViewpointId& from) const;

  const corpus::ConnectivityGraph& graph_;
  mutable std::mutex mu_;
  mutable std::map<corpus::ViewpointId, std::map<corpus::ViewpointId, double>> memo_;
};

/// Sum of edge lengths along a walk; consecutive nodes must be equal or
/// adjacent (kValidation otherwise).
double path_length(const corpus::ConnectivityGraph& graph,
                   const std::vector<corpus::ViewpointId>& path);

/// Dynamic time warping with geodesic step cost.
double dtw(const ShortestPaths& sp, const std::vector<corpus::ViewpointId>& a,
           const std::vector<corpus::ViewpointId>& b);

/// TL, NE, SR, SPL, OSR as usual. nDTW = exp(-DTW / (|gt| * radius)),
/// sDTW = SR * nDTW. CLS = PC * LS with path coverage
/// PC = mean over gt nodes r of exp(-d(r, pred) / radius), expected length
/// EPL = PC * PL(gt) and LS = EPL / (EPL + |EPL - PL(pred)|).
Metrics evaluate(const EpisodeResult& episode, const ShortestPaths& sp,
                 double success_radius_m = kSuccessRadiusM);
Metrics evaluate(const EpisodeResult& episode, const corpus::ConnectivityGraph& graph,
                 double success_radius_m = kSuccessRadiusM);

/// Component-wise mean; empty input gives zeros.
Metrics mean(const std::vector<Metrics>& all);

}  // namespace vlnaug::navmetrics
