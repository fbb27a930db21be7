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

// Equirectangular panorama geometry.
//
// Frame: x right, y up, z forward. Heading rotates about +y, clockwise seen
// from above (heading 90° looks down +x). Elevation is positive upward.
// Panorama column u = W/2 looks along +z, row v = H/2 is the horizon.

#include <array>
#include <vector>

#include <Eigen/Core>

#include "vlnaug/corpus.hpp"
#include "vlnaug/image.hpp"

namespace vlnaug::panogeom {

inline constexpr int kHeadingCount = 12;
inline constexpr int kElevationCount = 3;
inline constexpr int kViewCount = kHeadingCount * kElevationCount;
inline constexpr double kHeadingStepDeg = 30.0;
inline constexpr double kElevationStepDeg = 30.0;
inline constexpr double kDefaultFovDeg = 60.0;
inline constexpr int kDefaultViewSize = 224;

struct CameraParams {
  double fov_deg = kDefaultFovDeg;  // horizontal, in (0, 180)
  double heading_deg = 0.0;
  double elevation_deg = 0.0;
  int out_width = kDefaultViewSize;
  int out_height = kDefaultViewSize;
};

/// kDomain for fov outside (0, 180); kPrecondition for empty output.
void validate(const CameraParams& params);

struct ProjectionMatrices {
  Eigen::Matrix3d j_inv;  // pixel (col+0.5, row+0.5, 1) -> camera ray
  Eigen::Matrix3d r;      // camera ray -> world ray
};

/// Inverse pinhole intrinsics. f = (out_width/2) / tan(fov/2), principal
/// point at the image center; the y row of K carries -f because image rows
/// grow downward while the camera y axis points up.
Eigen::Matrix3d projection_intrinsics(const CameraParams& params);
Eigen::Matrix3d projection_inverse(const CameraParams& params);

/// Heading then elevation: R = R_heading(θ) · R_elevation(φ).
Eigen::Matrix3d rotation_matrix(double heading_deg, double elevation_deg);

ProjectionMatrices projection_matrices(const CameraParams& params);

/// Rectilinear view of the panorama. Bilinear sampling, horizontal wrap,
/// vertical clamp.
Image equirec_to_perspective(const corpus::Panorama& pano, const CameraParams& params);

struct View {
  Image image;
  int heading_index = 0;    // 0..11, heading = 30° * index
  int elevation_index = 0;  // 0..2, elevation = -30°, 0°, +30°
};

struct ViewSet {
  std::vector<View> views;  // index = elevation_index * 12 + heading_index
  std::array<bool, kViewCount> candidate_mask{};

  std::size_t candidate_count() const;
};

constexpr int view_index(int heading_index, int elevation_index) {
  return elevation_index * kHeadingCount + heading_index;
}
constexpr int heading_index_of(int view) { return view % kHeadingCount; }
constexpr int elevation_index_of(int view) { return view / kHeadingCount; }
constexpr double heading_deg_of(int heading_index) { return heading_index * kHeadingStepDeg; }
constexpr double elevation_deg_of(int elevation_index) {
  return (elevation_index - 1) * kElevationStepDeg;
}

/// Camera for one grid cell of the 36-view discretization.
CameraParams view_camera(int view, double fov_deg = kDefaultFovDeg,
                         int out_size = kDefaultViewSize);

ViewSet discretize_panorama(const corpus::Panorama& pano, double fov_deg = kDefaultFovDeg,
                            int out_size = kDefaultViewSize);

/// Nearest grid cell for a direction relative to the panorama. Ties go to the
/// larger index (15° -> heading 1).
int nearest_view_index(double relative_heading_deg, double elevation_deg);

/// View index that looks from `current` toward `next`. The pair must be a
/// graph edge (kDomain otherwise).
int gt_view_index(const corpus::ConnectivityGraph& graph, const corpus::ViewpointId& current,
                  const corpus::ViewpointId& next, double pano_heading_deg = 0.0);

/// Marks the views containing each graph neighbor of `current`.
void mark_candidates(ViewSet& views, const corpus::ConnectivityGraph& graph,
                     const corpus::ViewpointId& current, double pano_heading_deg = 0.0);

/// Circular horizontal shift by `columns` (positive moves content right).
Image roll_columns(const Image& img, int columns);

}  // namespace vlnaug::panogeom
