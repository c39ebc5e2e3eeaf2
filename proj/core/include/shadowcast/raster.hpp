// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shadowcast/geometry.hpp"

namespace shadowcast {

struct Window {
  double x_min = -1.0;
  double y_min = -1.0;
  double x_max = 1.0;
  double y_max = 1.0;

  friend bool operator==(const Window&, const Window&) = default;
};

// Maps a world rectangle onto a pixel grid. Column i spans x left to right;
// row j spans y top (y_max) to bottom (y_min), so images read as seen from
// above the canvas.
class RasterSpec {
 public:
  RasterSpec() : RasterSpec(256, 256, Window{}) {}
  RasterSpec(int width, int height, Window window);

  int width() const { return width_; }
  int height() const { return height_; }
  const Window& window() const { return window_; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width_) * height_; }

  double pixel_width() const { return (window_.x_max - window_.x_min) / width_; }
  double pixel_height() const { return (window_.y_max - window_.y_min) / height_; }

  Vec2 pixel_center(int i, int j) const {
    return {window_.x_min + (i + 0.5) / width_ * (window_.x_max - window_.x_min),
            window_.y_max - (j + 0.5) / height_ * (window_.y_max - window_.y_min)};
  }

  /// Continuous pixel coordinates of a world point (pixel centres at k + 0.5).
  double to_column(double x) const { return (x - window_.x_min) / pixel_width(); }
  double to_row(double y) const { return (window_.y_max - y) / pixel_height(); }

  friend bool operator==(const RasterSpec&, const RasterSpec&) = default;

 private:
  int width_;
  int height_;
  Window window_;
};

// Tag distinguishes grids that share an element type but not a meaning.
template <typename T, typename Tag = void>
class Grid {
 public:
  Grid() = default;
  explicit Grid(RasterSpec spec, T fill = T{})
      : spec_(spec), data_(spec.pixel_count(), fill) {}

  const RasterSpec& spec() const { return spec_; }
  int width() const { return spec_.width(); }
  int height() const { return spec_.height(); }
  std::size_t size() const { return data_.size(); }

  T& at(int i, int j) { return data_[index(i, j)]; }
  const T& at(int i, int j) const { return data_[index(i, j)]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  bool contains(int i, int j) const { return i >= 0 && j >= 0 && i < width() && j < height(); }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * spec_.width() + static_cast<std::size_t>(i);
  }

  RasterSpec spec_;
  std::vector<T> data_;
};

/// 1 = set. Stored as bytes so that spans and comparisons stay cheap.
using BinaryRaster = Grid<std::uint8_t, struct BinaryTag>;
/// Values in [0, 1].
using SoftRaster = Grid<double>;
/// 8-bit grayscale image; drawings use 0 for ink and 255 for paper.
using GrayImage = Grid<std::uint8_t, struct GrayTag>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};
using RgbImage = Grid<Rgb>;

std::size_t count_set(const BinaryRaster& raster);
double intersection_over_union(const BinaryRaster& a, const BinaryRaster& b);

/// Pixels with value > threshold.
BinaryRaster threshold(const SoftRaster& soft, double level = 0.5);
SoftRaster to_soft(const BinaryRaster& binary);

/// 0/255 grayscale image of a binary raster.
GrayImage to_gray(const BinaryRaster& binary);
/// Soft values scaled by 255 and rounded half up.
GrayImage to_gray(const SoftRaster& soft);
/// Ink pixels (value < 128) of a drawing.
BinaryRaster ink_mask(const GrayImage& drawing);
/// Black ink on white paper.
GrayImage ink_to_drawing(const BinaryRaster& ink);

void require_same_spec(const RasterSpec& a, const RasterSpec& b, const char* what);

}  // namespace shadowcast
