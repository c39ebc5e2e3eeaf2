// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

// Mesh and raster generators shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "shadowcast/geometry.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast::testing {

/// Axis-aligned box with its base centred on the origin at z = 0.
inline Mesh box_mesh(double sx, double sy, double sz) {
  Mesh m;
  for (int k = 0; k < 8; ++k) {
    m.vertices.emplace_back((k & 1 ? 0.5 : -0.5) * sx, (k & 2 ? 0.5 : -0.5) * sy, (k & 4 ? sz : 0.0));
  }
  const std::array<std::array<std::uint32_t, 4>, 6> quads = {
      {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}}};
  for (const auto& q : quads) {
    m.triangles.push_back({q[0], q[1], q[2]});
    m.triangles.push_back({q[0], q[2], q[3]});
  }
  return m;
}

inline Mesh elongated_box() { return box_mesh(1.0, 0.2, 0.3); }

/// UV sphere of radius 1 resting on the plane.
inline Mesh sphere_mesh(int rings = 24, int segments = 48) {
  Mesh m;
  const double pi = std::numbers::pi;
  m.vertices.emplace_back(0, 0, 0);
  for (int i = 1; i < rings; ++i) {
    const double v = pi * i / rings;
    for (int j = 0; j < segments; ++j) {
      const double u = 2 * pi * j / segments;
      m.vertices.emplace_back(std::sin(v) * std::cos(u), std::sin(v) * std::sin(u), 1.0 - std::cos(v));
    }
  }
  m.vertices.emplace_back(0, 0, 2);
  const auto ring = [&](int i, int j) { return static_cast<std::uint32_t>(1 + (i - 1) * segments + (j % segments)); };
  for (int j = 0; j < segments; ++j) m.triangles.push_back({0, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i + 1 < rings; ++i) {
    for (int j = 0; j < segments; ++j) {
      m.triangles.push_back({ring(i, j), ring(i, j + 1), ring(i + 1, j + 1)});
      m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i + 1, j)});
    }
  }
  const auto top = static_cast<std::uint32_t>(m.vertices.size() - 1);
  for (int j = 0; j < segments; ++j) m.triangles.push_back({top, ring(rings - 1, j), ring(rings - 1, j + 1)});
  return m;
}

/// Table and chair style union of boxes: a richer, non-convex silhouette.
inline Mesh table_mesh() {
  Mesh out;
  const auto add = [&](Mesh b, double dx, double dy, double dz) {
    const auto base = static_cast<std::uint32_t>(out.vertices.size());
    for (auto v : b.vertices) out.vertices.push_back(v + Vec3(dx, dy, dz));
    for (auto t : b.triangles) out.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  };
  add(box_mesh(1.0, 0.6, 0.08), 0, 0, 0.6);
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) add(box_mesh(0.08, 0.08, 0.6), sx * 0.42, sy * 0.22, 0);
  }
  return out;
}

inline BinaryRaster random_blobs(const RasterSpec& spec, std::mt19937_64& rng, int blobs) {
  BinaryRaster r(spec);
  std::uniform_int_distribution<int> cx(0, spec.width() - 1), cy(0, spec.height() - 1), rad(1, spec.width() / 6);
  for (int b = 0; b < blobs; ++b) {
    const int x0 = cx(rng), y0 = cy(rng), rr = rad(rng);
    const bool disc = rng() & 1;
    for (int y = std::max(0, y0 - rr); y <= std::min(spec.height() - 1, y0 + rr); ++y) {
      for (int x = std::max(0, x0 - rr); x <= std::min(spec.width() - 1, x0 + rr); ++x) {
        if (!disc || (x - x0) * (x - x0) + (y - y0) * (y - y0) <= rr * rr) r.at(x, y) = 1;
      }
    }
  }
  return r;
}

/// Sierpinski carpet of the given level, one cell per `cell` pixels, at the top-left corner.
inline BinaryRaster sierpinski_carpet(const RasterSpec& spec, int level, int cell = 1) {
  BinaryRaster r(spec);
  int side = 1;
  for (int k = 0; k < level; ++k) side *= 3;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      bool filled = true;
      for (int a = x, b = y; a > 0 || b > 0; a /= 3, b /= 3) {
        if (a % 3 == 1 && b % 3 == 1) filled = false;
      }
      if (!filled) continue;
      for (int dy = 0; dy < cell; ++dy) {
        for (int dx = 0; dx < cell; ++dx) {
          if (r.contains(x * cell + dx, y * cell + dy)) r.at(x * cell + dx, y * cell + dy) = 1;
        }
      }
    }
  }
  return r;
}

}  // namespace shadowcast::testing
