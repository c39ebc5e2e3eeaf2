// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shadowcast/geometry.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
  friend auto operator<=>(const PixelPoint&, const PixelPoint&) = default;
};

enum class ContourKind { kOuter, kHole };

struct Contour {
  ContourKind kind = ContourKind::kOuter;
  // Cyclic: consecutive points, and the last and first, are 8-neighbours.
  std::vector<PixelPoint> points;
};

inline constexpr std::size_t kMinContourPoints = 4;
inline constexpr double kDefaultMinAreaFraction = 0.001;
inline constexpr int kDefaultStrokePx = 2;
inline constexpr int kDefaultDilatePx = 4;

class ContourSet {
 public:
  /// Throws EmptyContourSet for an empty list.
  ContourSet(std::vector<Contour> contours, RasterSpec source_spec);

  const std::vector<Contour>& contours() const { return contours_; }
  const RasterSpec& source_spec() const { return spec_; }
  std::size_t total_points() const;

 private:
  std::vector<Contour> contours_;
  RasterSpec spec_;
};

/// Moore-neighbour tracing of every 8-connected component whose area is at
/// least min_area_frac of the raster, including the boundaries of its holes
/// (4-connected background pockets). Contours shorter than four points are
/// dropped. Throws EmptyShadow if nothing survives.
ContourSet extract_contours(const BinaryRaster& shadow, double min_area_frac = kDefaultMinAreaFraction);

/// Draws each contour pixel with a disc brush of diameter stroke_px.
BinaryRaster render_contours(const ContourSet& contours, int stroke_px = kDefaultStrokePx);

/// Same drawing in colour onto an RGB canvas.
void draw_contours(RgbImage& canvas, const ContourSet& contours, int stroke_px, Rgb color);

/// JSON export: {"width", "height", "contours": [{"kind": "outer"|"hole",
/// "points": [[x, y], ...]}]} with the first point repeated at the end.
nlohmann::json contours_to_json(const ContourSet& contours);

struct KeepoutMask {
  BinaryRaster mask;  // 1 = strokes forbidden
};

KeepoutMask object_keepout_mask(const Mesh& posed_mesh, const RasterSpec& spec, int dilate_px = kDefaultDilatePx);

inline constexpr std::size_t kAnimationFrames = 5;

/// Forbids pixels strictly closer to the dynamic region (covered by some but not
/// all frames) than to the static region (covered by every frame). Throws
/// InvalidFrameCount unless exactly five frames are given and NoStaticRegion
/// when the frames share no pixel.
KeepoutMask animated_keepout_mask(std::span<const BinaryRaster> frames);

struct Region {
  std::vector<std::uint32_t> pixels;  // row-major pixel indices, ascending
  std::size_t area() const { return pixels.size(); }
  /// Discovery rank of the earliest member region.
  std::size_t order = 0;
};

struct RegionSet {
  RasterSpec spec;
  std::vector<Region> regions;
};

/// Background pockets not 4-connected to the raster border. Throws
/// NoClosedRegions when there are none.
RegionSet extract_closed_regions(const BinaryRaster& strokes);

/// Repeatedly unites the two smallest regions (ties by discovery order) until
/// at most target remain.
RegionSet greedy_merge(RegionSet regions, std::size_t target = 4);

BinaryRaster region_mask(const RasterSpec& spec, const Region& region);

}  // namespace shadowcast
