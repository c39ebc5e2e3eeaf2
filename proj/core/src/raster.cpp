// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {

RasterSpec::RasterSpec(int width, int height, Window window) : width_(width), height_(height), window_(window) {
  if (width < 16 || height < 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "raster must be at least 16x16, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (!(window.x_max > window.x_min) || !(window.y_max > window.y_min)) {
    throw Error(ErrorCode::kInvalidArgument, "raster window has no area");
  }
}

std::size_t count_set(const BinaryRaster& raster) {
  std::size_t n = 0;
  for (auto v : raster.values()) n += v != 0;
  return n;
}

double intersection_over_union(const BinaryRaster& a, const BinaryRaster& b) {
  require_same_spec(a.spec(), b.spec(), "intersection_over_union");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    inter += a[k] && b[k];
    uni += a[k] || b[k];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryRaster threshold(const SoftRaster& soft, double level) {
  BinaryRaster out(soft.spec());
  for (std::size_t k = 0; k < soft.size(); ++k) out[k] = soft[k] > level;
  return out;
}

SoftRaster to_soft(const BinaryRaster& binary) {
  SoftRaster out(binary.spec());
  for (std::size_t k = 0; k < binary.size(); ++k) out[k] = binary[k] ? 1.0 : 0.0;
  return out;
}

GrayImage to_gray(const BinaryRaster& binary) {
  GrayImage out(binary.spec());
  for (std::size_t k = 0; k < binary.size(); ++k) out[k] = binary[k] ? 255 : 0;
  return out;
}

GrayImage to_gray(const SoftRaster& soft) {
  GrayImage out(soft.spec());
  for (std::size_t k = 0; k < soft.size(); ++k) {
    out[k] = static_cast<std::uint8_t>(std::floor(std::clamp(soft[k], 0.0, 1.0) * 255.0 + 0.5));
  }
  return out;
}

BinaryRaster ink_mask(const GrayImage& drawing) {
  BinaryRaster out(drawing.spec());
  for (std::size_t k = 0; k < drawing.size(); ++k) out[k] = drawing[k] < 128;
  return out;
}

GrayImage ink_to_drawing(const BinaryRaster& ink) {
  GrayImage out(ink.spec(), 255);
  for (std::size_t k = 0; k < ink.size(); ++k) {
    if (ink[k]) out[k] = 0;
  }
  return out;
}

void require_same_spec(const RasterSpec& a, const RasterSpec& b, const char* what) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kSpecMismatch, std::string(what) + ": " + std::to_string(a.width()) + "x" +
                                              std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                              "x" + std::to_string(b.height()));
  }
}

}  // namespace shadowcast
