// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

// One pass of a 3-wide running max and min along rows (axis 0) or columns.
void extrema3(const SoftRaster& in, SoftRaster& hi, SoftRaster& lo, bool along_rows) {
  const int w = in.width();
  const int h = in.height();
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      double mx = in.at(i, j);
      double mn = mx;
      for (int d = -1; d <= 1; d += 2) {
        const int ii = along_rows ? std::clamp(i + d, 0, w - 1) : i;
        const int jj = along_rows ? j : std::clamp(j + d, 0, h - 1);
        mx = std::max(mx, in.at(ii, jj));
        mn = std::min(mn, in.at(ii, jj));
      }
      hi.at(i, j) = mx;
      lo.at(i, j) = mn;
    }
  }
}

}  // namespace

SoftRaster boundary_map(const SoftRaster& soft) {
  const RasterSpec& spec = soft.spec();
  SoftRaster row_hi(spec), row_lo(spec), hi(spec), lo(spec), scratch(spec);
  extrema3(soft, row_hi, row_lo, true);
  extrema3(row_hi, hi, scratch, false);
  extrema3(row_lo, scratch, lo, false);
  SoftRaster out(spec);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = hi[k] - lo[k];
  return out;
}

BoxCountCurve box_count_curve(const SoftRaster& boundary, const std::vector<int>& scales) {
  for (std::size_t k = 0; k < scales.size(); ++k) {
    if (scales[k] < 1 || (k > 0 && scales[k] <= scales[k - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "box scales must be positive and strictly increasing");
    }
  }
  const int w = boundary.width();
  const int h = boundary.height();
  BoxCountCurve curve{scales, {}};
  curve.counts.reserve(scales.size());

  std::vector<double> log_empty;
  std::vector<std::uint8_t> saturated;
  for (int eps : scales) {
    const int bx = (w + eps - 1) / eps;
    const int by = (h + eps - 1) / eps;
    log_empty.assign(static_cast<std::size_t>(bx) * by, 0.0);
    saturated.assign(log_empty.size(), 0);
    for (int j = 0; j < h; ++j) {
      const std::size_t row = static_cast<std::size_t>(j / eps) * bx;
      for (int i = 0; i < w; ++i) {
        const double b = std::clamp(boundary.at(i, j), 0.0, 1.0);
        if (b == 0.0) continue;
        const std::size_t box = row + i / eps;
        // A fully set pixel makes the emptiness product exactly zero.
        if (b >= 1.0) {
          saturated[box] = 1;
        } else {
          log_empty[box] += std::log1p(-b);
        }
      }
    }
    double n = 0.0;
    for (std::size_t box = 0; box < log_empty.size(); ++box) {
      n += saturated[box] ? 1.0 : -std::expm1(log_empty[box]);
    }
    curve.counts.push_back(n);
  }
  return curve;
}

FdValue fractal_dimension(const BoxCountCurve& curve, double min_count) {
  const std::size_t n = curve.scales.size();
  if (n < 2 || curve.counts.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "box-count curve needs at least two matching scales");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(curve.counts[k] >= min_count)) {
      throw Error(ErrorCode::kEmptyShadow, "only " + std::to_string(curve.counts[k]) + " boxes occupied at scale " +
                                               std::to_string(curve.scales[k]));
    }
  }
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    x_mean += -std::log(static_cast<double>(curve.scales[k]));
    y_mean += std::log(curve.counts[k]);
  }
  x_mean /= static_cast<double>(n);
  y_mean /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = -std::log(static_cast<double>(curve.scales[k])) - x_mean;
    sxy += dx * (std::log(curve.counts[k]) - y_mean);
    sxx += dx * dx;
  }
  return FdValue{sxy / sxx, curve};
}

FdValue shadow_fd(const Mesh& mesh, const SceneParams& params, const ObjectiveSettings& settings) {
  const SoftRaster soft = shadow_raster_soft(mesh, params, settings.spec, settings.sigma, settings.light_distance);
  return fractal_dimension(box_count_curve(boundary_map(soft), settings.scales));
}

double objective(const Mesh& mesh, const SceneParams& params, const ObjectiveSettings& settings) {
  return -shadow_fd(mesh, params, settings).fd;
}

void write_curve_csv(std::ostream& out, const BoxCountCurve& curve) {
  out << "epsilon,count\n";
  const auto old = out.precision(17);
  for (std::size_t k = 0; k < curve.scales.size(); ++k) out << curve.scales[k] << ',' << curve.counts[k] << '\n';
  out.precision(old);
}

}  // namespace shadowcast
