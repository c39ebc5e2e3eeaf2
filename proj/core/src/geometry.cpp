// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/geometry.hpp"

#include <cmath>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyMesh: return "EmptyMesh";
    case ErrorCode::kDegenerateMesh: return "DegenerateMesh";
    case ErrorCode::kAbovePlaneLight: return "AbovePlaneLight";
    case ErrorCode::kInvalidSigma: return "InvalidSigma";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyShadow: return "EmptyShadow";
    case ErrorCode::kEmptyContourSet: return "EmptyContourSet";
    case ErrorCode::kNoStaticRegion: return "NoStaticRegion";
    case ErrorCode::kNoClosedRegions: return "NoClosedRegions";
    case ErrorCode::kInvalidFrameCount: return "InvalidFrameCount";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kDivisionDomain: return "DivisionDomain";
    case ErrorCode::kServiceError: return "ServiceError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kMaskViolation: return "MaskViolation";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kPortInUse: return "PortInUse";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Error";
}

AxisBox bounding_box(const Mesh& mesh) {
  if (mesh.vertices.empty()) throw Error(ErrorCode::kEmptyMesh, "mesh has no vertices");
  AxisBox box{mesh.vertices.front(), mesh.vertices.front()};
  for (const Vec3& v : mesh.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

void validate_indices(const Mesh& mesh) {
  const auto n = mesh.vertices.size();
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (auto idx : mesh.triangles[t]) {
      if (idx >= n) {
        throw Error(ErrorCode::kParseError, "triangle " + std::to_string(t) + " references vertex " +
                                                std::to_string(idx) + " of " + std::to_string(n));
      }
    }
  }
}

SceneParams SceneParams::tied(double theta, double phi, double alpha) {
  return SceneParams{theta, phi, kObjectRadiusFraction * kCanvasRadius, theta, alpha};
}

Mesh normalize_mesh(const Mesh& mesh, double object_length) {
  const AxisBox box = bounding_box(mesh);
  const double longest = box.extent().maxCoeff();
  if (!(longest > 0.0) || !std::isfinite(longest)) {
    throw Error(ErrorCode::kDegenerateMesh, "bounding box has no extent");
  }
  const double scale = object_length / longest;
  const Vec3 anchor(box.center().x(), box.center().y(), box.min.z());

  Mesh out = mesh;
  for (Vec3& v : out.vertices) v = (v - anchor) * scale;
  return out;
}

Mesh pose_mesh(const Mesh& mesh, const SceneParams& params) {
  const AxisBox box = bounding_box(mesh);
  return pose_mesh(mesh, params, Vec2(box.center().x(), box.center().y()));
}

Mesh pose_mesh(const Mesh& mesh, const SceneParams& params, const Vec2& pivot) {
  const Vec2 target(params.r * std::cos(params.gamma), params.r * std::sin(params.gamma));
  const double c = std::cos(params.alpha);
  const double s = std::sin(params.alpha);

  Mesh out = mesh;
  for (Vec3& v : out.vertices) {
    const double dx = v.x() - pivot.x();
    const double dy = v.y() - pivot.y();
    v.x() = target.x() + c * dx - s * dy;
    v.y() = target.y() + s * dx + c * dy;
  }
  return out;
}

LightPose light_position(const SceneParams& params, double distance) {
  const double cp = std::cos(params.phi);
  return LightPose{distance * Vec3(cp * std::cos(params.theta), cp * std::sin(params.theta), std::sin(params.phi))};
}

Vec2 project_vertex(const LightPose& light, const Vec3& point) {
  const Vec3& l = light.position;
  if (!(point.z() < l.z())) {
    throw Error(ErrorCode::kAbovePlaneLight, "point at height " + std::to_string(point.z()) +
                                                 " is not below the light at " + std::to_string(l.z()));
  }
  if (point.z() == 0.0) return point.head<2>();
  const double t = l.z() / (l.z() - point.z());
  return (l + t * (point - l)).head<2>();
}

}  // namespace shadowcast
