// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Geometry>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

double cross(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

double boundary_distance(const Triangle2& tri, const Vec2& p) {
  const auto& c = tri.corners;
  return std::min({segment_distance(c[0], c[1], p), segment_distance(c[1], c[2], p), segment_distance(c[2], c[0], p)});
}

// log(logistic(x)), stable for large |x|.
double log_logistic(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

struct PixelRange {
  int i0, i1, j0, j1;  // inclusive
  bool empty() const { return i0 > i1 || j0 > j1; }
};

// Pixels whose centres may fall within the triangle grown by margin. One extra
// pixel on every side absorbs rounding in the coordinate mapping.
PixelRange covered_pixels(const Triangle2& tri, const RasterSpec& spec, double margin) {
  double x0 = tri.corners[0].x(), x1 = x0, y0 = tri.corners[0].y(), y1 = y0;
  for (const Vec2& c : tri.corners) {
    x0 = std::min(x0, c.x());
    x1 = std::max(x1, c.x());
    y0 = std::min(y0, c.y());
    y1 = std::max(y1, c.y());
  }
  x0 -= margin;
  x1 += margin;
  y0 -= margin;
  y1 += margin;
  const auto to_int = [](double v, int lo, int hi) {
    if (!(v > lo)) return lo;
    if (!(v < hi)) return hi;
    return static_cast<int>(std::floor(v));
  };
  PixelRange r;
  r.i0 = to_int(spec.to_column(x0) - 1.0, 0, spec.width());
  r.i1 = to_int(spec.to_column(x1) + 1.0, -1, spec.width() - 1);
  r.j0 = to_int(spec.to_row(y1) - 1.0, 0, spec.height());
  r.j1 = to_int(spec.to_row(y0) + 1.0, -1, spec.height() - 1);
  return r;
}

double signed_area(const Triangle2& tri) {
  const auto& c = tri.corners;
  return 0.5 * cross(c[1] - c[0], c[2] - c[0]);
}

// +1 when every directed edge has exactly one opposite twin and the enclosed
// volume is positive (outward winding), -1 for the inward-wound equivalent, 0
// for open or inconsistently wound meshes.
int closed_orientation(const Mesh& mesh) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  edges.reserve(3 * mesh.triangles.size());
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) edges.emplace_back(t[k], t[(k + 1) % 3]);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) return 0;
  for (const auto& [a, b] : edges) {
    if (a == b || !std::binary_search(edges.begin(), edges.end(), std::make_pair(b, a))) return 0;
  }
  double volume = 0.0;
  for (const auto& t : mesh.triangles) {
    volume += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  }
  return volume > 0.0 ? 1 : volume < 0.0 ? -1 : 0;
}

}  // namespace

bool contains(const Triangle2& tri, const Vec2& p) {
  const auto& [a, b, c] = tri.corners;
  const double area = cross(b - a, c - a);
  if (area == 0.0) return boundary_distance(tri, p) == 0.0;
  const double e0 = cross(b - a, p - a);
  const double e1 = cross(c - b, p - b);
  const double e2 = cross(a - c, p - c);
  return (e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0) || (e0 <= 0.0 && e1 <= 0.0 && e2 <= 0.0);
}

double signed_distance(const Triangle2& tri, const Vec2& point) {
  const double d = boundary_distance(tri, point);
  return contains(tri, point) ? -d : d;
}

BinaryRaster rasterize_hard(std::span<const Triangle2> triangles, const RasterSpec& spec) {
  BinaryRaster out(spec);
  for (const Triangle2& tri : triangles) {
    const PixelRange r = covered_pixels(tri, spec, 0.0);
    if (r.empty()) continue;
    for (int j = r.j0; j <= r.j1; ++j) {
      for (int i = r.i0; i <= r.i1; ++i) {
        if (!out.at(i, j) && contains(tri, spec.pixel_center(i, j))) out.at(i, j) = 1;
      }
    }
  }
  return out;
}

SoftRaster rasterize_soft(std::span<const Triangle2> triangles, const RasterSpec& spec, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be positive, got " + std::to_string(sigma));
  }
  // Sum of log(1 - coverage_j) per pixel; culled triangles contribute log(1) = 0.
  SoftRaster log_empty(spec, 0.0);
  const double inv_sigma = 1.0 / sigma;
  for (const Triangle2& tri : triangles) {
    const PixelRange r = covered_pixels(tri, spec, kCullRadiusSigmas * sigma);
    if (r.empty()) continue;
    for (int j = r.j0; j <= r.j1; ++j) {
      for (int i = r.i0; i <= r.i1; ++i) {
        const double d = signed_distance(tri, spec.pixel_center(i, j));
        log_empty.at(i, j) += log_logistic(d * inv_sigma);
      }
    }
  }
  SoftRaster out(spec);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::clamp(-std::expm1(log_empty[k]), 0.0, 1.0);
  return out;
}

std::vector<Triangle2> project_shadow(const Mesh& mesh, const SceneParams& params, double light_distance) {
  if (mesh.empty()) throw Error(ErrorCode::kEmptyMesh, "mesh has no faces");
  return project_posed_shadow(pose_mesh(mesh, params), params, light_distance);
}

std::vector<Triangle2> project_posed_shadow(const Mesh& posed, const SceneParams& params, double light_distance) {
  if (posed.empty()) throw Error(ErrorCode::kEmptyMesh, "mesh has no faces");
  const LightPose light = light_position(params, light_distance);
  std::vector<Vec2> projected;
  projected.reserve(posed.vertices.size());
  for (const Vec3& v : posed.vertices) projected.push_back(project_vertex(light, v));

  // For a closed surface the light-facing triangles already cover the whole
  // shadow; they project with positive orientation. Dropping the rest keeps
  // each silhouette edge single, so the soft 0.5 level sits on the hard edge.
  const int orientation = closed_orientation(posed);
  std::vector<Triangle2> tris;
  tris.reserve(posed.triangles.size());
  for (const auto& t : posed.triangles) {
    const Triangle2 tri{{projected[t[0]], projected[t[1]], projected[t[2]]}};
    if (orientation != 0 && orientation * signed_area(tri) <= 0.0) continue;
    tris.push_back(tri);
  }
  return tris;
}

std::vector<Triangle2> footprint_triangles(const Mesh& posed_mesh) {
  std::vector<Triangle2> tris;
  tris.reserve(posed_mesh.triangles.size());
  const auto& v = posed_mesh.vertices;
  for (const auto& t : posed_mesh.triangles) {
    tris.push_back({{v[t[0]].head<2>(), v[t[1]].head<2>(), v[t[2]].head<2>()}});
  }
  return tris;
}

BinaryRaster shadow_raster_hard(const Mesh& mesh, const SceneParams& params, const RasterSpec& spec,
                                double light_distance) {
  return rasterize_hard(project_shadow(mesh, params, light_distance), spec);
}

SoftRaster shadow_raster_soft(const Mesh& mesh, const SceneParams& params, const RasterSpec& spec, double sigma,
                              double light_distance) {
  return rasterize_soft(project_shadow(mesh, params, light_distance), spec, sigma);
}

}  // namespace shadowcast
