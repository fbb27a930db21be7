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

#include "vlnaug/panogeom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "vlnaug/error.hpp"

namespace vlnaug::panogeom {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

// Bilinear lookup at continuous pixel coordinates (pixel centers at +0.5).
void sample_bilinear(const Image& src, double u, double v, std::uint8_t* out) {
  const double fx = u - 0.5;
  const double fy = std::clamp(v - 0.5, 0.0, static_cast<double>(src.height - 1));
  const double x_floor = std::floor(fx);
  const double wx = fx - x_floor;
  int x0 = static_cast<int>(x_floor) % src.width;
  if (x0 < 0) x0 += src.width;
  const int x1 = (x0 + 1) % src.width;
  const int y0 = static_cast<int>(fy);
  const int y1 = std::min(y0 + 1, src.height - 1);
  const double wy = fy - y0;
  const std::uint8_t* p00 = src.at(x0, y0);
  const std::uint8_t* p10 = src.at(x1, y0);
  const std::uint8_t* p01 = src.at(x0, y1);
  const std::uint8_t* p11 = src.at(x1, y1);
  for (int c = 0; c < 3; ++c) {
    const double top = p00[c] + (p10[c] - p00[c]) * wx;
    const double bot = p01[c] + (p11[c] - p01[c]) * wx;
    const double val = top + (bot - top) * wy;
    out[c] = static_cast<std::uint8_t>(std::clamp(std::lround(val), 0L, 255L));
  }
}

}  // namespace

void validate(const CameraParams& p) {
  require(p.fov_deg > 0.0 && p.fov_deg < 180.0, ErrorKind::kDomain,
          "fov must lie in (0, 180) degrees, got " + std::to_string(p.fov_deg));
  require(p.out_width > 0 && p.out_height > 0, ErrorKind::kPrecondition,
          "output dimensions must be positive");
  require(std::isfinite(p.heading_deg) && std::isfinite(p.elevation_deg), ErrorKind::kDomain,
          "camera angles must be finite");
}

Eigen::Matrix3d projection_intrinsics(const CameraParams& p) {
  validate(p);
  const double f = 0.5 * p.out_width / std::tan(deg2rad(p.fov_deg) / 2.0);
  Eigen::Matrix3d k;
  k << f, 0.0, p.out_width / 2.0,  //
      0.0, -f, p.out_height / 2.0,  //
      0.0, 0.0, 1.0;
  return k;
}

Eigen::Matrix3d projection_inverse(const CameraParams& p) {
  const Eigen::Matrix3d k = projection_intrinsics(p);
  const double f = k(0, 0);
  Eigen::Matrix3d inv;
  inv << 1.0 / f, 0.0, -k(0, 2) / f,  //
      0.0, -1.0 / f, k(1, 2) / f,      //
      0.0, 0.0, 1.0;
  return inv;
}

Eigen::Matrix3d rotation_matrix(double heading_deg, double elevation_deg) {
  const double th = deg2rad(heading_deg);
  const double ph = deg2rad(elevation_deg);
  Eigen::Matrix3d heading;
  heading << std::cos(th), 0.0, std::sin(th),  //
      0.0, 1.0, 0.0,                            //
      -std::sin(th), 0.0, std::cos(th);
  // Tilts +z toward +y for positive elevation.
  Eigen::Matrix3d elevation;
  elevation << 1.0, 0.0, 0.0,               //
      0.0, std::cos(ph), std::sin(ph),      //
      0.0, -std::sin(ph), std::cos(ph);
  return heading * elevation;
}

ProjectionMatrices projection_matrices(const CameraParams& p) {
  return {projection_inverse(p), rotation_matrix(p.heading_deg, p.elevation_deg)};
}

Image equirec_to_perspective(const corpus::Panorama& pano, const CameraParams& params) {
  corpus::validate_panorama(pano);
  const auto [j_inv, r] = projection_matrices(params);
  const Eigen::Matrix3d m = r * j_inv;
  const double w = pano.width();
  const double h = pano.height();
  Image out(params.out_width, params.out_height);
  for (int i = 0; i < params.out_height; ++i) {
    const Eigen::Vector3d row_base = m * Eigen::Vector3d(0.5, i + 0.5, 1.0);
    const Eigen::Vector3d col_step = m.col(0);
    for (int j = 0; j < params.out_width; ++j) {
      const Eigen::Vector3d ray = (row_base + col_step * j).normalized();
      const double lon = std::atan2(ray.x(), ray.z());
      const double lat = std::asin(std::clamp(ray.y(), -1.0, 1.0));
      const double u = (lon / (2.0 * kPi) + 0.5) * w;
      const double v = (0.5 - lat / kPi) * h;
      sample_bilinear(pano.image, u, v, out.at(j, i));
    }
  }
  return out;
}

std::size_t ViewSet::candidate_count() const {
  return static_cast<std::size_t>(std::count(candidate_mask.begin(), candidate_mask.end(), true));
}

CameraParams view_camera(int view, double fov_deg, int out_size) {
  require(view >= 0 && view < kViewCount, ErrorKind::kPrecondition,
          "view index out of range: " + std::to_string(view));
  CameraParams p;
  p.fov_deg = fov_deg;
  p.heading_deg = heading_deg_of(heading_index_of(view));
  p.elevation_deg = elevation_deg_of(elevation_index_of(view));
  p.out_width = out_size;
  p.out_height = out_size;
  return p;
}

ViewSet discretize_panorama(const corpus::Panorama& pano, double fov_deg, int out_size) {
  corpus::validate_panorama(pano);
  ViewSet set;
  set.views.reserve(kViewCount);
  for (int idx = 0; idx < kViewCount; ++idx) {
    set.views.push_back(View{equirec_to_perspective(pano, view_camera(idx, fov_deg, out_size)),
                             heading_index_of(idx), elevation_index_of(idx)});
  }
  return set;
}

int nearest_view_index(double relative_heading_deg, double elevation_deg) {
  // Small epsilon so exact half-steps computed through atan2 still round up.
  constexpr double kEps = 1e-9;
  double heading = std::fmod(relative_heading_deg, 360.0);
  if (heading < 0) heading += 360.0;
  const int h = static_cast<int>(std::floor(heading / kHeadingStepDeg + 0.5 + kEps)) %
                kHeadingCount;
  const int e = std::clamp(
      static_cast<int>(std::floor(elevation_deg / kElevationStepDeg + 0.5 + kEps)), -1, 1);
  return view_index(h, e + 1);
}

int gt_view_index(const corpus::ConnectivityGraph& graph, const corpus::ViewpointId& current,
                  const corpus::ViewpointId& next, double pano_heading_deg) {
  require(graph.adjacent(current, next), ErrorKind::kDomain,
          "gt_view_index: " + current + " and " + next + " are not adjacent");
  const Eigen::Vector3d d = graph.position(next) - graph.position(current);
  const double bearing = rad2deg(std::atan2(d.x(), d.z()));
  const double elevation = rad2deg(std::atan2(d.y(), std::hypot(d.x(), d.z())));
  return nearest_view_index(bearing - pano_heading_deg, elevation);
}

void mark_candidates(ViewSet& views, const corpus::ConnectivityGraph& graph,
                     const corpus::ViewpointId& current, double pano_heading_deg) {
  for (const auto& [nbr, _] : graph.neighbors(current)) {
    views.candidate_mask[static_cast<std::size_t>(
        gt_view_index(graph, current, nbr, pano_heading_deg))] = true;
  }
}

Image roll_columns(const Image& img, int columns) {
  Image out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      int src = (x - columns) % img.width;
      if (src < 0) src += img.width;
      std::copy_n(img.at(src, y), 3, out.at(x, y));
    }
  }
  return out;
}

}  // namespace vlnaug::panogeom
