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

#include "vlnaug/navmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "vlnaug/error.hpp"

namespace vlnaug::navmetrics {

using corpus::ViewpointId;

nlohmann::json to_json(const Metrics& m) {
  return {{"TL", m.tl},   {"NE", m.ne},     {"SR", m.sr},     {"SPL", m.spl},
          {"OSR", m.osr}, {"nDTW", m.ndtw}, {"sDTW", m.sdtw}, {"CLS", m.cls}};
}

ShortestPaths::ShortestPaths(const corpus::ConnectivityGraph& graph) : graph_(graph) {}

const std::map<ViewpointId, double>& ShortestPaths::table(const ViewpointId& from) const {
  std::lock_guard lock(mu_);
  if (auto it = memo_.find(from); it != memo_.end()) return it->second;
  require(graph_.has_node(from), ErrorKind::kPrecondition, "unknown viewpoint '" + from + "'");

  std::map<ViewpointId, double> dist{{from, 0.0}};
  using Item = std::pair<double, ViewpointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0.0, from);
  while (!queue.empty()) {
    auto [d, node] = queue.top();
    queue.pop();
    if (d > dist[node]) continue;
    for (const auto& [next, w] : graph_.neighbors(node)) {
      const double nd = d + w;
      auto it = dist.find(next);
      if (it == dist.end() || nd < it->second) {
        dist[next] = nd;
        queue.emplace(nd, next);
      }
    }
  }
  return memo_.emplace(from, std::move(dist)).first->second;
}

double ShortestPaths::distance(const ViewpointId& from, const ViewpointId& to) const {
  require(graph_.has_node(to), ErrorKind::kPrecondition, "unknown viewpoint '" + to + "'");
  const auto& t = table(from);
  auto it = t.find(to);
  if (it == t.end()) {
    fail(ErrorKind::kMetric, "no path between '" + from + "' and '" + to + "' in scan '" +
                                 graph_.scan_id() + "'");
  }
  return it->second;
}

double path_length(const corpus::ConnectivityGraph& graph, const std::vector<ViewpointId>& path) {
  double total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i] == path[i - 1]) continue;
    const auto d = graph.edge_distance(path[i - 1], path[i]);
    require(d.has_value(), ErrorKind::kValidation,
            "path steps from '" + path[i - 1] + "' to non-adjacent '" + path[i] + "'");
    total += *d;
  }
  return total;
}

double dtw(const ShortestPaths& sp, const std::vector<ViewpointId>& a,
           const std::vector<ViewpointId>& b) {
  const auto inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> m(a.size() + 1, std::vector<double>(b.size() + 1, inf));
  m[0][0] = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const double cost = sp.distance(a[i - 1], b[j - 1]);
      m[i][j] = cost + std::min({m[i - 1][j], m[i][j - 1], m[i - 1][j - 1]});
    }
  }
  return m[a.size()][b.size()];
}

Metrics evaluate(const EpisodeResult& ep, const ShortestPaths& sp, double radius) {
  require(!ep.predicted_path.empty() && !ep.gt_path.empty(), ErrorKind::kPrecondition,
          "evaluate: empty path");
  require(radius > 0, ErrorKind::kPrecondition, "evaluate: success radius must be positive");
  const auto& graph = sp.graph();
  for (const auto* path : {&ep.predicted_path, &ep.gt_path}) {
    for (const auto& v : *path) {
      require(graph.has_node(v), ErrorKind::kPrecondition,
              "evaluate: viewpoint '" + v + "' not in scan '" + graph.scan_id() + "'");
    }
  }
  const auto& goal = ep.gt_path.back();
  Metrics m;
  m.tl = path_length(graph, ep.predicted_path);
  m.ne = sp.distance(ep.predicted_path.back(), goal);
  m.sr = m.ne <= radius ? 1.0 : 0.0;
  const double best = sp.distance(ep.gt_path.front(), goal);
  const double denom = std::max(best, m.tl);
  m.spl = denom > 0 ? m.sr * best / denom : m.sr;
  m.osr = std::any_of(ep.predicted_path.begin(), ep.predicted_path.end(),
                      [&](const auto& v) { return sp.distance(v, goal) <= radius; })
              ? 1.0
              : 0.0;
  m.ndtw = std::exp(-dtw(sp, ep.predicted_path, ep.gt_path) /
                    (static_cast<double>(ep.gt_path.size()) * radius));
  m.sdtw = m.sr * m.ndtw;

  double coverage = 0;
  for (const auto& r : ep.gt_path) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& p : ep.predicted_path) nearest = std::min(nearest, sp.distance(p, r));
    coverage += std::exp(-nearest / radius);
  }
  coverage /= static_cast<double>(ep.gt_path.size());
  const double expected = coverage * path_length(graph, ep.gt_path);
  const double ls_denom = expected + std::abs(expected - m.tl);
  m.cls = coverage * (ls_denom > 0 ? expected / ls_denom : 1.0);
  return m;
}

Metrics evaluate(const EpisodeResult& episode, const corpus::ConnectivityGraph& graph,
                 double success_radius_m) {
  return evaluate(episode, ShortestPaths(graph), success_radius_m);
}

Metrics mean(const std::vector<Metrics>& all) {
  Metrics out;
  if (all.empty()) return out;
  for (const auto& m : all) {
    out.tl += m.tl;
    out.ne += m.ne;
    out.sr += m.sr;
    out.spl += m.spl;
    out.osr += m.osr;
    out.ndtw += m.ndtw;
    out.sdtw += m.sdtw;
    out.cls += m.cls;
  }
  const auto n = static_cast<double>(all.size());
  for (double* f : {&out.tl, &out.ne, &out.sr, &out.spl, &out.osr, &out.ndtw, &out.sdtw, &out.cls}) {
    *f /= n;
  }
  return out;
}

}  // namespace vlnaug::navmetrics
