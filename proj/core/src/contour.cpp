// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <string>

#include <nlohmann/json.hpp>

#include "shadowcast/error.hpp"
#include "shadowcast/morphology.hpp"
#include "shadowcast/render.hpp"

namespace shadowcast {
namespace {

// Neighbour offsets in clockwise order on screen (rows grow downwards).
constexpr std::array<PixelPoint, 8> kRing = {{{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};

int ring_index(PixelPoint from, PixelPoint to) {
  const PixelPoint d{to.x - from.x, to.y - from.y};
  for (int k = 0; k < 8; ++k) {
    if (kRing[k] == d) return k;
  }
  return -1;
}

// Binary image with implicit background outside its bounds.
struct LocalMask {
  int x0 = 0, y0 = 0, w = 0, h = 0;
  std::vector<std::uint8_t> bits;

  bool at(int x, int y) const {
    return x >= 0 && y >= 0 && x < w && y < h && bits[static_cast<std::size_t>(y) * w + x];
  }
};

// Border following from start, whose neighbour in the direction of `outside`
// is background. Follows the boundary shared with that background region.
std::vector<PixelPoint> follow_border(const LocalMask& m, PixelPoint start, PixelPoint outside) {
  const int first_dir = ring_index(start, outside);
  int found = -1;
  for (int s = 1; s <= 8; ++s) {
    const int k = (first_dir + s) % 8;
    if (m.at(start.x + kRing[k].x, start.y + kRing[k].y)) {
      found = k;
      break;
    }
  }
  if (found < 0) return {start};

  const PixelPoint first{start.x + kRing[found].x, start.y + kRing[found].y};
  std::vector<PixelPoint> out;
  PixelPoint prev = first;
  PixelPoint cur = start;
  const std::size_t limit = 4 * static_cast<std::size_t>(m.w) * m.h + 8;
  while (out.size() < limit) {
    out.push_back(cur);
    // Counter-clockwise from the pixel after prev.
    const int back = ring_index(cur, prev);
    PixelPoint next = prev;
    for (int s = 1; s <= 8; ++s) {
      const int k = (back - s + 8) % 8;
      const PixelPoint cand{cur.x + kRing[k].x, cur.y + kRing[k].y};
      if (m.at(cand.x, cand.y)) {
        next = cand;
        break;
      }
    }
    if (next == start && cur == first) break;
    prev = cur;
    cur = next;
  }
  return out;
}

// Labels of 4- or 8-connected components of pixels where pred(x, y) holds.
template <typename Pred>
std::vector<std::vector<PixelPoint>> components(int w, int h, bool eight, Pred pred) {
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::vector<PixelPoint>> out;
  std::deque<PixelPoint> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * w + x;
      if (seen[idx] || !pred(x, y)) continue;
      std::vector<PixelPoint> comp;
      seen[idx] = 1;
      queue.push_back({x, y});
      while (!queue.empty()) {
        const PixelPoint p = queue.front();
        queue.pop_front();
        comp.push_back(p);
        for (int k = 0; k < 8; ++k) {
          if (!eight && (k % 2 == 1)) continue;
          const int nx = p.x + kRing[k].x;
          const int ny = p.y + kRing[k].y;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto nidx = static_cast<std::size_t>(ny) * w + nx;
          if (seen[nidx] || !pred(nx, ny)) continue;
          seen[nidx] = 1;
          queue.push_back({nx, ny});
        }
      }
      out.push_back(std::move(comp));
    }
  }
  return out;
}

std::vector<PixelPoint> disc_offsets(int diameter) {
  const double r = diameter / 2.0;
  const int reach = static_cast<int>(std::floor(r));
  std::vector<PixelPoint> out;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      if (dx * dx + dy * dy <= r * r) out.push_back({dx, dy});
    }
  }
  return out;
}

}  // namespace

ContourSet::ContourSet(std::vector<Contour> contours, RasterSpec source_spec)
    : contours_(std::move(contours)), spec_(source_spec) {
  if (contours_.empty()) throw Error(ErrorCode::kEmptyContourSet, "a contour set needs at least one contour");
}

std::size_t ContourSet::total_points() const {
  std::size_t n = 0;
  for (const auto& c : contours_) n += c.points.size();
  return n;
}

ContourSet extract_contours(const BinaryRaster& shadow, double min_area_frac) {
  const int w = shadow.width();
  const int h = shadow.height();
  const double min_area = min_area_frac * static_cast<double>(shadow.size());
  const auto comps = components(w, h, true, [&](int x, int y) { return shadow.at(x, y) != 0; });

  std::vector<Contour> contours;
  for (const auto& comp : comps) {
    if (static_cast<double>(comp.size()) < min_area) continue;

    int x_lo = w, x_hi = -1, y_lo = h, y_hi = -1;
    for (const auto& p : comp) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
    // One pixel of padding so the background around the component is connected.
    LocalMask m;
    m.x0 = x_lo - 1;
    m.y0 = y_lo - 1;
    m.w = x_hi - x_lo + 3;
    m.h = y_hi - y_lo + 3;
    m.bits.assign(static_cast<std::size_t>(m.w) * m.h, 0);
    for (const auto& p : comp) m.bits[static_cast<std::size_t>(p.y - m.y0) * m.w + (p.x - m.x0)] = 1;

    const auto to_global = [&](std::vector<PixelPoint> pts) {
      for (auto& p : pts) {
        p.x += m.x0;
        p.y += m.y0;
      }
      return pts;
    };

    // comp.front() is the first pixel in raster order, so its west neighbour is background.
    const PixelPoint start{comp.front().x - m.x0, comp.front().y - m.y0};
    auto outer = follow_border(m, start, {start.x - 1, start.y});
    if (outer.size() >= kMinContourPoints) contours.push_back({ContourKind::kOuter, to_global(std::move(outer))});

    const auto background = components(m.w, m.h, false, [&](int x, int y) { return !m.at(x, y); });
    for (const auto& pocket : background) {
      const bool touches_edge = std::any_of(pocket.begin(), pocket.end(), [&](const PixelPoint& p) {
        return p.x == 0 || p.y == 0 || p.x == m.w - 1 || p.y == m.h - 1;
      });
      if (touches_edge) continue;
      // The pixel above the first pocket pixel is foreground.
      const PixelPoint top = pocket.front();
      auto hole = follow_border(m, {top.x, top.y - 1}, top);
      if (hole.size() >= kMinContourPoints) contours.push_back({ContourKind::kHole, to_global(std::move(hole))});
    }
  }
  if (contours.empty()) throw Error(ErrorCode::kEmptyShadow, "no shadow component passes the area filter");
  return ContourSet(std::move(contours), shadow.spec());
}

BinaryRaster render_contours(const ContourSet& contours, int stroke_px) {
  if (stroke_px < 1) throw Error(ErrorCode::kInvalidArgument, "stroke width must be at least 1 px");
  BinaryRaster out(contours.source_spec());
  const auto brush = disc_offsets(stroke_px);
  for (const auto& c : contours.contours()) {
    for (const auto& p : c.points) {
      for (const auto& o : brush) {
        if (out.contains(p.x + o.x, p.y + o.y)) out.at(p.x + o.x, p.y + o.y) = 1;
      }
    }
  }
  return out;
}

void draw_contours(RgbImage& canvas, const ContourSet& contours, int stroke_px, Rgb color) {
  const BinaryRaster strokes = render_contours(contours, stroke_px);
  require_same_spec(canvas.spec(), strokes.spec(), "draw_contours");
  for (std::size_t k = 0; k < strokes.size(); ++k) {
    if (strokes[k]) canvas[k] = color;
  }
}

nlohmann::json contours_to_json(const ContourSet& contours) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : contours.contours()) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back({p.x, p.y});
    pts.push_back({c.points.front().x, c.points.front().y});
    list.push_back({{"kind", c.kind == ContourKind::kOuter ? "outer" : "hole"}, {"points", std::move(pts)}});
  }
  return {{"width", contours.source_spec().width()},
          {"height", contours.source_spec().height()},
          {"contours", std::move(list)}};
}

KeepoutMask object_keepout_mask(const Mesh& posed_mesh, const RasterSpec& spec, int dilate_px) {
  if (dilate_px < 0) throw Error(ErrorCode::kInvalidArgument, "dilation radius must be non-negative");
  const auto tris = footprint_triangles(posed_mesh);
  return KeepoutMask{dilate_disc(rasterize_hard(tris, spec), dilate_px)};
}

KeepoutMask animated_keepout_mask(std::span<const BinaryRaster> frames) {
  if (frames.size() != kAnimationFrames) {
    throw Error(ErrorCode::kInvalidFrameCount, "expected 5 keyframes, got " + std::to_string(frames.size()));
  }
  const RasterSpec& spec = frames.front().spec();
  for (const auto& f : frames) require_same_spec(spec, f.spec(), "animated_keepout_mask");

  BinaryRaster stable(spec, 1);
  BinaryRaster changing(spec, 0);
  for (std::size_t k = 0; k < stable.size(); ++k) {
    bool all = true;
    bool any = false;
    for (const auto& f : frames) {
      all = all && f[k];
      any = any || f[k];
    }
    stable[k] = all;
    changing[k] = any && !all;
  }
  if (count_set(stable) == 0) throw Error(ErrorCode::kNoStaticRegion, "no pixel is shadowed in every keyframe");

  const Grid<double> d_static = squared_distance_transform(stable);
  const Grid<double> d_dynamic = squared_distance_transform(changing);
  KeepoutMask out{BinaryRaster(spec)};
  for (std::size_t k = 0; k < stable.size(); ++k) out.mask[k] = d_dynamic[k] < d_static[k];
  return out;
}

}  // namespace shadowcast
