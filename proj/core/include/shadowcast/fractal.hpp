// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <vector>

#include "shadowcast/geometry.hpp"
#include "shadowcast/raster.hpp"
#include "shadowcast/render.hpp"

namespace shadowcast {

inline const std::vector<int> kDefaultScales = {2, 4, 8, 16, 32};
/// Fewer occupied boxes than this at any scale marks the shadow as degenerate.
inline constexpr double kMinBoxCount = 3.0;

struct BoxCountCurve {
  std::vector<int> scales;     // box side in pixels, strictly increasing
  std::vector<double> counts;  // soft number of occupied boxes per scale
};

struct FdValue {
  double fd = 0.0;
  BoxCountCurve curve;
};

/// 3x3 morphological gradient (max minus min) with replicated borders.
SoftRaster boundary_map(const SoftRaster& soft);

/// Soft box occupancy per scale. The raster is zero padded on the right and
/// bottom to a multiple of each box size. On {0,1} inputs the counts are the
/// exact integer number of boxes holding at least one set pixel.
BoxCountCurve box_count_curve(const SoftRaster& boundary, const std::vector<int>& scales = kDefaultScales);

/// Least-squares slope of ln N(eps) against ln(1/eps). Throws EmptyShadow when
/// any count is below min_count.
FdValue fractal_dimension(const BoxCountCurve& curve, double min_count = kMinBoxCount);

struct ObjectiveSettings {
  RasterSpec spec;
  double sigma = kDefaultSigma;
  std::vector<int> scales = kDefaultScales;
  double light_distance = kLightDistance;
};

/// Loss -FD of the soft shadow boundary for a normalized mesh and scene.
double objective(const Mesh& mesh, const SceneParams& params, const ObjectiveSettings& settings);

/// FD of the soft shadow boundary (the negated objective) with its curve.
FdValue shadow_fd(const Mesh& mesh, const SceneParams& params, const ObjectiveSettings& settings);

/// Diagnostic export: header "epsilon,count" then one row per scale.
void write_curve_csv(std::ostream& out, const BoxCountCurve& curve);

}  // namespace shadowcast
