// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "shadowcast/contour.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

inline constexpr std::uint8_t kShadowGray = 128;
inline constexpr std::uint8_t kObjectGray = 64;
inline constexpr double kMaxMaskInkFraction = 0.02;

/// Erase width used with a given stroke width.
inline constexpr int default_band_px(int stroke_px) { return stroke_px + 1; }

/// Paints paper over every pixel within band_px (Euclidean) of a contour
/// polyline segment.
GrayImage erase_contour(const GrayImage& drawing, const ContourSet& contours, int band_px);

/// White paper, gray shadow, dark object footprint with a black outline, then
/// black drawing ink on top. Throws SpecMismatch if the sizes differ.
GrayImage composite(const GrayImage& drawing_partial, const BinaryRaster& shadow, const BinaryRaster& footprint);

/// Fraction of the drawing's ink pixels lying inside the mask (0 when there is
/// no ink).
double mask_ink_fraction(const GrayImage& drawing, const BinaryRaster& mask);

/// Throws MaskViolation when more than kMaxMaskInkFraction of the ink lies
/// inside the keep-out mask.
void check_keepout(const GrayImage& drawing, const BinaryRaster& mask);

/// Drawing in RGB with the contour painted pure red on top.
RgbImage red_overlay(const GrayImage& drawing, const ContourSet& contours, int stroke_px);

/// Colour per animation frame: red, green, blue, magenta, cyan.
std::span<const Rgb> frame_palette();

/// Overlays the contours of every frame on white, each in its palette colour.
RgbImage frame_overlay(std::span<const ContourSet> frame_contours, int stroke_px);

RgbImage to_rgb(const GrayImage& gray);

}  // namespace shadowcast
