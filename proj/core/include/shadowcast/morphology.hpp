// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <vector>

#include "shadowcast/raster.hpp"

namespace shadowcast {

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Exact squared Euclidean distance (in pixels) from every pixel to the nearest
/// set pixel of the seed raster, by separable lower-envelope passes. Values are
/// integers held in doubles; +inf everywhere when no pixel is set.
Grid<double> squared_distance_transform(const BinaryRaster& seeds);

/// Dilation by the disc {dx^2 + dy^2 <= radius^2}.
BinaryRaster dilate_disc(const BinaryRaster& raster, int radius);

}  // namespace shadowcast
