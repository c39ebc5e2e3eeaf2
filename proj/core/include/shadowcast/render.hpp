// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <vector>

#include "shadowcast/geometry.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

struct Triangle2 {
  std::array<Vec2, 3> corners;
};

inline constexpr double kDefaultSigma = 0.01;
inline constexpr double kCullRadiusSigmas = 6.0;

/// Signed Euclidean distance from point to the triangle boundary, negative
/// inside (boundary inclusive), positive outside.
double signed_distance(const Triangle2& tri, const Vec2& point);

/// Inclusive point-in-triangle test; works for either winding and for
/// zero-area triangles.
bool contains(const Triangle2& tri, const Vec2& point);

/// A pixel is set iff its centre lies inside or on at least one triangle.
BinaryRaster rasterize_hard(std::span<const Triangle2> triangles, const RasterSpec& spec);

/// Soft silhouette: p = 1 - prod_j (1 - logistic(-d_j / sigma)) with d_j the
/// signed distance to triangle j. Triangles are culled outside their bounding
/// box grown by 6 sigma.
SoftRaster rasterize_soft(std::span<const Triangle2> triangles, const RasterSpec& spec, double sigma);

/// Projects the triangles of the mesh, posed by params, through the light onto
/// the canvas plane. For closed, consistently wound meshes only light-facing
/// triangles are kept; their union is the same shadow.
/// Projection of a mesh that is already posed in world coordinates.
std::vector<Triangle2> project_posed_shadow(const Mesh& posed_mesh, const SceneParams& params,
                                            double light_distance = kLightDistance);
std::vector<Triangle2> project_shadow(const Mesh& mesh, const SceneParams& params,
                                      double light_distance = kLightDistance);

/// Vertical (orthographic) footprint triangles of a posed mesh.
std::vector<Triangle2> footprint_triangles(const Mesh& posed_mesh);

BinaryRaster shadow_raster_hard(const Mesh& mesh, const SceneParams& params, const RasterSpec& spec,
                                double light_distance = kLightDistance);
SoftRaster shadow_raster_soft(const Mesh& mesh, const SceneParams& params, const RasterSpec& spec,
                              double sigma, double light_distance = kLightDistance);

}  // namespace shadowcast
