// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

namespace shadowcast {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

// Canonical scene frame: the canvas is the disk of radius kCanvasRadius centred
// at the origin of the plane z = 0, with +z pointing up towards the light.
inline constexpr double kCanvasRadius = 1.0;
inline constexpr double kObjectLength = 0.5;
inline constexpr double kLightDistance = 3.0;
inline constexpr double kObjectRadiusFraction = 0.8;

using TriangleIndices = std::array<std::uint32_t, 3>;

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<TriangleIndices> triangles;

  bool empty() const { return triangles.empty(); }
};

struct AxisBox {
  Vec3 min;
  Vec3 max;

  Vec3 extent() const { return max - min; }
  Vec3 center() const { return 0.5 * (min + max); }
};

/// Axis-aligned bounding box of the mesh vertices. The mesh must have at least
/// one vertex.
AxisBox bounding_box(const Mesh& mesh);

/// Throws ParseError if any triangle references a vertex out of range.
void validate_indices(const Mesh& mesh);

/// Light and object placement. Angles are radians; r is in canvas units.
struct SceneParams {
  double theta = 0.0;  // light azimuth
  double phi = 0.0;    // light elevation above the canvas plane
  double r = 0.0;      // object centre distance from the canvas centre
  double gamma = 0.0;  // object centre azimuth
  double alpha = 0.0;  // object rotation about the vertical axis

  /// Parameters with the object tied to the light: gamma = theta and
  /// r = 0.8 canvas radii. Only theta, phi and alpha remain free.
  static SceneParams tied(double theta, double phi, double alpha);

  friend bool operator==(const SceneParams&, const SceneParams&) = default;
};

struct LightPose {
  Vec3 position;
};

/// Uniformly scales the mesh so its longest bounding-box side equals
/// object_length, then recentres it so the box centre sits on the z axis and
/// the lowest vertex rests on the canvas plane.
Mesh normalize_mesh(const Mesh& mesh, double object_length = kObjectLength);

/// Rotates by alpha about the vertical axis through the bounding-box centre,
/// then translates the centre to (r cos gamma, r sin gamma). Heights are kept.
Mesh pose_mesh(const Mesh& mesh, const SceneParams& params);
/// As above about an explicit pivot (x, y), which is moved to the target. Used
/// to pose animation keyframes rigidly together.
Mesh pose_mesh(const Mesh& mesh, const SceneParams& params, const Vec2& pivot);

LightPose light_position(const SceneParams& params, double distance = kLightDistance);

/// Intersection of the ray from the light through point with the plane z = 0.
/// Throws AbovePlaneLight when point.z >= light.z.
Vec2 project_vertex(const LightPose& light, const Vec3& point);

}  // namespace shadowcast
