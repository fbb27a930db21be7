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

// Reference implementations used only by tests. They are written
// independently of the library: plain loops, textbook formulas, no shared
// helpers beyond the Image type.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vlnaug/image.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

// Bilinear sample of an equirectangular image at continuous coordinates
// where pixel (x, y) covers [x, x+1) x [y, y+1). Columns wrap, rows clamp.
inline void sample(const vlnaug::Image& img, double u, double v, std::uint8_t out[3]) {
  const int w = img.width;
  const int h = img.height;
  double px = u - 0.5;
  double py = v - 0.5;
  if (py < 0) py = 0;
  if (py > h - 1) py = h - 1;
  const int xa = static_cast<int>(std::floor(px));
  const double tx = px - xa;
  const int ya = static_cast<int>(std::floor(py));
  const double ty = py - ya;
  auto col = [w](int x) { return ((x % w) + w) % w; };
  auto row = [h](int y) { return std::min(std::max(y, 0), h - 1); };
  for (int c = 0; c < 3; ++c) {
    const double a = img.at(col(xa), row(ya))[c];
    const double b = img.at(col(xa + 1), row(ya))[c];
    const double d = img.at(col(xa), row(ya + 1))[c];
    const double e = img.at(col(xa + 1), row(ya + 1))[c];
    const double val = a * (1 - tx) * (1 - ty) + b * tx * (1 - ty) + d * (1 - tx) * ty + e * tx * ty;
    out[c] = static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, std::floor(val + 0.5))));
  }
}

// Perspective view by the inverse gnomonic projection centered on
// (longitude = heading, latitude = elevation). Plane coordinates are in
// focal-length units, x east and y north.
inline vlnaug::Image perspective(const vlnaug::Image& pano, double fov_deg, double heading_deg,
                                 double elevation_deg, int out_w, int out_h) {
  vlnaug::Image out(out_w, out_h);
  const double f = (out_w / 2.0) / std::tan(fov_deg * kPi / 360.0);
  const double lam0 = heading_deg * kPi / 180.0;
  const double phi1 = elevation_deg * kPi / 180.0;
  for (int i = 0; i < out_h; ++i) {
    for (int j = 0; j < out_w; ++j) {
      const double x = (j + 0.5 - out_w / 2.0) / f;
      const double y = (out_h / 2.0 - (i + 0.5)) / f;
      const double rho = std::sqrt(x * x + y * y);
      double lat, lon;
      if (rho < 1e-15) {
        lat = phi1;
        lon = lam0;
      } else {
        const double c = std::atan(rho);
        lat = std::asin(std::cos(c) * std::sin(phi1) + y * std::sin(c) * std::cos(phi1) / rho);
        lon = lam0 + std::atan2(x * std::sin(c),
                                rho * std::cos(phi1) * std::cos(c) - y * std::sin(phi1) * std::sin(c));
      }
      while (lon > kPi) lon -= 2 * kPi;
      while (lon <= -kPi) lon += 2 * kPi;
      const double u = (lon / (2 * kPi) + 0.5) * pano.width;
      const double v = (0.5 - lat / kPi) * pano.height;
      sample(pano, u, v, out.at(j, i));
    }
  }
  return out;
}

// Grid cell nearest to a direction: minimum circular heading distance over
// the 12 headings (exact ties go clockwise), elevation clamped to the
// nearest of -30/0/+30 (ties go up).
inline int nearest_cell(double heading_deg, double elevation_deg) {
  int best_h = 0;
  double best_d = std::numeric_limits<double>::infinity();
  bool best_cw = false;
  for (int h = 0; h < 12; ++h) {
    double d = h * 30.0 - heading_deg;
    d = std::fmod(d, 360.0);
    if (d <= -180) d += 360;
    if (d > 180) d -= 360;
    const double ad = std::abs(d);
    const bool cw = d > 0;
    if (ad < best_d - 1e-9 || (std::abs(ad - best_d) <= 1e-9 && cw && !best_cw)) {
      best_d = ad;
      best_h = h;
      best_cw = cw;
    }
  }
  int best_e = 0;
  double best_ed = std::numeric_limits<double>::infinity();
  for (int e = 0; e < 3; ++e) {
    const double d = std::abs((e - 1) * 30.0 - elevation_deg);
    if (d < best_ed - 1e-9 || (std::abs(d - best_ed) <= 1e-9 && e > best_e)) {
      best_ed = d;
      best_e = e;
    }
  }
  return best_e * 12 + best_h;
}

// Exhaustive grounding: for each image vector, the text vector with the
// largest cosine; the first maximum wins.
inline std::vector<std::size_t> argmax_grounding(const std::vector<std::vector<double>>& images,
                                                 const std::vector<std::vector<double>>& texts) {
  auto cosine = [](const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ab += a[i] * b[i];
      aa += a[i] * a[i];
      bb += b[i] * b[i];
    }
    return ab / std::sqrt(aa * bb);
  };
  std::vector<std::size_t> out;
  for (const auto& img : images) {
    std::size_t best = 0;
    double best_s = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < texts.size(); ++k) {
      const double s = cosine(img, texts[k]);
      if (s > best_s) {
        best_s = s;
        best = k;
      }
    }
    out.push_back(best);
  }
  return out;
}

// Shortest distance by enumerating every simple path (small graphs only).
// Returns +inf when unreachable.
using Adjacency = std::map<std::string, std::map<std::string, double>>;

inline double shortest_by_enumeration(const Adjacency& adj, const std::string& from,
                                      const std::string& to) {
  double best = std::numeric_limits<double>::infinity();
  std::set<std::string> on_path{from};
  std::function<void(const std::string&, double)> walk = [&](const std::string& node, double len) {
    if (node == to) {
      best = std::min(best, len);
      return;
    }
    auto it = adj.find(node);
    if (it == adj.end()) return;
    for (const auto& [next, w] : it->second) {
      if (on_path.count(next)) continue;
      on_path.insert(next);
      walk(next, len + w);
      on_path.erase(next);
    }
  };
  walk(from, 0.0);
  return best;
}

}  // namespace oracle
