// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations. Each one is deliberately naive so that
// it shares no code path with the engine it checks.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "shadowcast/contour.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast::testing {

struct Pt {
  double x = 0.0;
  double y = 0.0;
};

inline double cross(const Pt& o, const Pt& a, const Pt& b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

/// Andrew's monotone chain; counter-clockwise hull without repeated endpoints.
inline std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Pt> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

inline bool in_convex_polygon(const std::vector<Pt>& ccw, const Pt& p) {
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    if (cross(ccw[i], ccw[(i + 1) % ccw.size()], p) < 0) return false;
  }
  return true;
}

/// Even-odd ray casting.
inline bool in_polygon(const std::vector<Pt>& poly, const Pt& p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Pt& a = poly[i];
    const Pt& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

inline BinaryRaster rasterize_polygon(const RasterSpec& spec, const std::vector<Pt>& poly, bool convex) {
  BinaryRaster r(spec);
  for (int j = 0; j < spec.height(); ++j) {
    for (int i = 0; i < spec.width(); ++i) {
      const Vec2 c = spec.pixel_center(i, j);
      const Pt p{c.x(), c.y()};
      r.at(i, j) = convex ? in_convex_polygon(poly, p) : in_polygon(poly, p);
    }
  }
  return r;
}

inline double iou(const BinaryRaster& a, const BinaryRaster& b) {
  std::size_t inter = 0, uni = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    inter += (a[k] && b[k]);
    uni += (a[k] || b[k]);
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// 3x3 max minus min with clamped coordinates, in integers.
inline std::vector<int> boundary_oracle(const BinaryRaster& r) {
  const int w = r.width(), h = r.height();
  std::vector<int> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int lo = 1, hi = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int v = r.at(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1));
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = hi - lo;
    }
  }
  return out;
}

/// Number of eps x eps boxes (zero padding past the edge) holding a nonzero cell.
inline long box_count_oracle(const std::vector<int>& cells, int w, int h, int eps) {
  long n = 0;
  for (int by = 0; by < h; by += eps) {
    for (int bx = 0; bx < w; bx += eps) {
      bool hit = false;
      for (int y = by; y < std::min(h, by + eps) && !hit; ++y) {
        for (int x = bx; x < std::min(w, bx + eps) && !hit; ++x) hit = cells[static_cast<std::size_t>(y) * w + x] != 0;
      }
      n += hit;
    }
  }
  return n;
}

inline double loglog_slope(const std::vector<int>& scales, const std::vector<double>& counts) {
  double sx = 0, sy = 0;
  const double n = static_cast<double>(scales.size());
  for (std::size_t k = 0; k < scales.size(); ++k) {
    sx += -std::log(static_cast<double>(scales[k]));
    sy += std::log(counts[k]);
  }
  double num = 0, den = 0;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const double dx = -std::log(static_cast<double>(scales[k])) - sx / n;
    num += dx * (std::log(counts[k]) - sy / n);
    den += dx * dx;
  }
  return num / den;
}

/// Per-pixel squared distance to the nearest set pixel by exhaustive search.
inline std::vector<double> brute_sq_distance(const BinaryRaster& seeds) {
  std::vector<std::pair<int, int>> set;
  for (int y = 0; y < seeds.height(); ++y) {
    for (int x = 0; x < seeds.width(); ++x) {
      if (seeds.at(x, y)) set.emplace_back(x, y);
    }
  }
  std::vector<double> out(seeds.size(), std::numeric_limits<double>::infinity());
  for (int y = 0; y < seeds.height(); ++y) {
    for (int x = 0; x < seeds.width(); ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [sx, sy] : set) {
        const double d = double(sx - x) * (sx - x) + double(sy - y) * (sy - y);
        best = std::min(best, d);
      }
      out[static_cast<std::size_t>(y) * seeds.width() + x] = best;
    }
  }
  return out;
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const std::function<double(double, double, double, double, double, double, int)> step =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6 * (flo + 4 * flm + fmid);
        const double right = (hi - mid) / 6 * (fmid + 4 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
        return step(lo, mid, flo, flm, fmid, left, depth - 1) + step(mid, hi, fmid, frm, fhi, right, depth - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return step(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), 50);
}

inline double normal_cdf_oracle(double x) {
  const double pi = 3.14159265358979323846;
  const auto density = [pi](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2 * pi); };
  return x >= 0 ? 0.5 + integrate(density, 0.0, x) : 0.5 - integrate(density, x, 0.0);
}

inline double hausdorff(const std::vector<PixelPoint>& a, const std::vector<PixelPoint>& b) {
  const auto directed = [](const std::vector<PixelPoint>& p, const std::vector<PixelPoint>& q) {
    double worst = 0;
    for (const auto& u : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : q) best = std::min(best, std::hypot(double(u.x - v.x), double(u.y - v.y)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

inline std::vector<PixelPoint> all_points(const ContourSet& c) {
  std::vector<PixelPoint> out;
  for (const auto& k : c.contours()) out.insert(out.end(), k.points.begin(), k.points.end());
  return out;
}

}  // namespace shadowcast::testing
