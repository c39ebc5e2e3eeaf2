// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/compose.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

double point_segment_distance2(double px, double py, PixelPoint a, PixelPoint b) {
  const double abx = b.x - a.x;
  const double aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  double t = len2 > 0.0 ? ((px - a.x) * abx + (py - a.y) * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = a.x + t * abx - px;
  const double dy = a.y + t * aby - py;
  return dx * dx + dy * dy;
}

constexpr std::array<Rgb, 5> kFramePalette = {{
    {255, 0, 0},
    {0, 255, 0},
    {0, 0, 255},
    {255, 0, 255},
    {0, 255, 255},
}};

}  // namespace

GrayImage erase_contour(const GrayImage& drawing, const ContourSet& contours, int band_px) {
  if (band_px < 1) throw Error(ErrorCode::kInvalidArgument, "erase band must be at least 1 px");
  require_same_spec(drawing.spec(), contours.source_spec(), "erase_contour");
  GrayImage out = drawing;
  const double band2 = static_cast<double>(band_px) * band_px;
  for (const auto& c : contours.contours()) {
    const std::size_t n = c.points.size();
    for (std::size_t k = 0; k < n; ++k) {
      const PixelPoint a = c.points[k];
      const PixelPoint b = c.points[(k + 1) % n];
      const int x0 = std::max(0, std::min(a.x, b.x) - band_px);
      const int x1 = std::min(out.width() - 1, std::max(a.x, b.x) + band_px);
      const int y0 = std::max(0, std::min(a.y, b.y) - band_px);
      const int y1 = std::min(out.height() - 1, std::max(a.y, b.y) + band_px);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          if (point_segment_distance2(x, y, a, b) <= band2) out.at(x, y) = 255;
        }
      }
    }
  }
  return out;
}

GrayImage composite(const GrayImage& drawing_partial, const BinaryRaster& shadow, const BinaryRaster& footprint) {
  require_same_spec(drawing_partial.spec(), shadow.spec(), "composite (shadow)");
  require_same_spec(drawing_partial.spec(), footprint.spec(), "composite (footprint)");
  const int w = shadow.width();
  const int h = shadow.height();
  GrayImage out(drawing_partial.spec(), 255);
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (shadow[k]) out[k] = kShadowGray;
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!footprint.at(x, y)) continue;
      const bool edge = x == 0 || y == 0 || x == w - 1 || y == h - 1 || !footprint.at(x - 1, y) ||
                        !footprint.at(x + 1, y) || !footprint.at(x, y - 1) || !footprint.at(x, y + 1);
      out.at(x, y) = edge ? 0 : kObjectGray;
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (drawing_partial[k] < 128) out[k] = 0;
  }
  return out;
}

double mask_ink_fraction(const GrayImage& drawing, const BinaryRaster& mask) {
  require_same_spec(drawing.spec(), mask.spec(), "mask_ink_fraction");
  std::size_t ink = 0;
  std::size_t inside = 0;
  for (std::size_t k = 0; k < drawing.size(); ++k) {
    if (drawing[k] >= 128) continue;
    ++ink;
    inside += mask[k] != 0;
  }
  return ink == 0 ? 0.0 : static_cast<double>(inside) / static_cast<double>(ink);
}

void check_keepout(const GrayImage& drawing, const BinaryRaster& mask) {
  const double frac = mask_ink_fraction(drawing, mask);
  if (frac > kMaxMaskInkFraction) {
    throw Error(ErrorCode::kMaskViolation,
                std::to_string(frac * 100.0) + "% of the drawing's ink lies inside the keep-out mask");
  }
}

RgbImage to_rgb(const GrayImage& gray) {
  RgbImage out(gray.spec());
  for (std::size_t k = 0; k < gray.size(); ++k) out[k] = Rgb{gray[k], gray[k], gray[k]};
  return out;
}

RgbImage red_overlay(const GrayImage& drawing, const ContourSet& contours, int stroke_px) {
  RgbImage out = to_rgb(drawing);
  draw_contours(out, contours, stroke_px, Rgb{255, 0, 0});
  return out;
}

std::span<const Rgb> frame_palette() { return kFramePalette; }

RgbImage frame_overlay(std::span<const ContourSet> frame_contours, int stroke_px) {
  if (frame_contours.empty()) throw Error(ErrorCode::kInvalidArgument, "no frame contours to overlay");
  if (frame_contours.size() > kFramePalette.size()) {
    throw Error(ErrorCode::kInvalidFrameCount, "palette covers at most 5 frames");
  }
  RgbImage out(frame_contours.front().source_spec(), Rgb{255, 255, 255});
  for (std::size_t f = 0; f < frame_contours.size(); ++f) {
    draw_contours(out, frame_contours[f], stroke_px, kFramePalette[f]);
  }
  return out;
}

}  // namespace shadowcast
