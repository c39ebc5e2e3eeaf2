// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "scenes.hpp"
#include "shadowcast/contour.hpp"
#include "shadowcast/error.hpp"
#include "shadowcast/morphology.hpp"
#include "shadowcast/render.hpp"

using namespace shadowcast;
namespace t = shadowcast::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

BinaryRaster rect(const RasterSpec& spec, int x0, int y0, int x1, int y1, BinaryRaster r = {}) {
  if (r.size() == 0) r = BinaryRaster(spec);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) r.at(x, y) = 1;
  }
  return r;
}

BinaryRaster outline(const RasterSpec& spec, int x0, int y0, int x1, int y1, BinaryRaster r = {}) {
  if (r.size() == 0) r = BinaryRaster(spec);
  for (int x = x0; x <= x1; ++x) r.at(x, y0) = r.at(x, y1) = 1;
  for (int y = y0; y <= y1; ++y) r.at(x0, y) = r.at(x1, y) = 1;
  return r;
}

// Foreground pixels with a 4-neighbour in the background (outside the raster counts).
std::set<PixelPoint> border_pixels(const BinaryRaster& r) {
  std::set<PixelPoint> out;
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      if (!r.at(x, y)) continue;
      const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& d : nb) {
        const int nx = x + d[0], ny = y + d[1];
        if (!r.contains(nx, ny) || !r.at(nx, ny)) {
          out.insert({x, y});
          break;
        }
      }
    }
  }
  return out;
}

bool closed_chain(const Contour& c) {
  for (std::size_t k = 0; k < c.points.size(); ++k) {
    const auto& a = c.points[k];
    const auto& b = c.points[(k + 1) % c.points.size()];
    if (std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) != 1) return false;
  }
  return true;
}

std::multiset<std::size_t> areas(const RegionSet& s) {
  std::multiset<std::size_t> out;
  for (const auto& r : s.regions) out.insert(r.area());
  return out;
}

RegionSet synthetic_regions(const std::vector<std::size_t>& sizes, const RasterSpec& spec) {
  RegionSet s{spec, {}};
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Region r;
    r.order = i;
    for (std::size_t k = 0; k < sizes[i]; ++k) r.pixels.push_back(next++);
    s.regions.push_back(std::move(r));
  }
  return s;
}

}  // namespace

TEST_CASE("contours: filled 3x3 square") {
  const RasterSpec spec(16, 16, Window{});
  const ContourSet c = extract_contours(rect(spec, 5, 5, 7, 7), 0.0);
  REQUIRE(c.contours().size() == 1);
  const Contour& k = c.contours()[0];
  CHECK(k.kind == ContourKind::kOuter);
  CHECK(k.points.size() == 8);
  CHECK(std::set<PixelPoint>(k.points.begin(), k.points.end()) == border_pixels(rect(spec, 5, 5, 7, 7)));
  CHECK(closed_chain(k));
}

TEST_CASE("contours: annulus gives an outer and a hole") {
  const RasterSpec spec(32, 32, Window{});
  BinaryRaster r = rect(spec, 4, 4, 20, 20);
  for (int y = 9; y <= 14; ++y) {
    for (int x = 9; x <= 14; ++x) r.at(x, y) = 0;
  }
  const ContourSet c = extract_contours(r, 0.0);
  REQUIRE(c.contours().size() == 2);
  CHECK(c.contours()[0].kind == ContourKind::kOuter);
  CHECK(c.contours()[1].kind == ContourKind::kHole);
  for (const auto& k : c.contours()) CHECK(closed_chain(k));
  std::set<PixelPoint> traced;
  for (const auto& k : c.contours()) traced.insert(k.points.begin(), k.points.end());
  CHECK(traced == border_pixels(r));
}

TEST_CASE("contours: empty and filtered input") {
  const RasterSpec spec(32, 32, Window{});
  CHECK(code_of([&] { extract_contours(BinaryRaster(spec)); }) == ErrorCode::kEmptyShadow);
  // 9 px under a 1% threshold (10.24 px) is filtered out.
  CHECK(code_of([&] { extract_contours(rect(spec, 2, 2, 4, 4), 0.01); }) == ErrorCode::kEmptyShadow);
  CHECK(code_of([&] { ContourSet({}, spec); }) == ErrorCode::kEmptyContourSet);
}

TEST_CASE("contours: traced pixels are exactly the border pixels of random shapes") {
  const RasterSpec spec(96, 96, Window{});
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    BinaryRaster r = t::random_blobs(spec, rng, 5);
    const ContourSet c = extract_contours(r, 0.0);
    std::set<PixelPoint> traced;
    for (const auto& k : c.contours()) {
      CHECK(k.points.size() >= kMinContourPoints);
      CHECK(closed_chain(k));
      traced.insert(k.points.begin(), k.points.end());
    }
    CHECK(traced == border_pixels(r));
  }
}

TEST_CASE("contours: filling the traced outlines recovers the shape up to the boundary band") {
  const RasterSpec spec(96, 96, Window{});
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryRaster r = t::random_blobs(spec, rng, 4);
    const ContourSet c = extract_contours(r, 0.0);
    std::vector<std::vector<t::Pt>> polys;
    for (const auto& k : c.contours()) {
      std::vector<t::Pt> poly;
      for (const auto& p : k.points) poly.push_back({double(p.x), double(p.y)});
      polys.push_back(std::move(poly));
    }
    BinaryRaster traced(spec);
    for (const auto& k : c.contours()) {
      for (const auto& p : k.points) traced.at(p.x, p.y) = 1;
    }
    const auto band = squared_distance_transform(traced);
    for (int y = 0; y < spec.height(); ++y) {
      for (int x = 0; x < spec.width(); ++x) {
        bool inside = false;
        for (const auto& poly : polys) inside ^= t::in_polygon(poly, {double(x), double(y)});
        if (inside != (r.at(x, y) != 0)) CHECK(band.at(x, y) <= 1.0);
      }
    }
  }
}

TEST_CASE("render contours: unit stroke draws the traced pixels, wider strokes stay close") {
  const RasterSpec spec(64, 64, Window{});
  BinaryRaster disc(spec);
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) disc.at(x, y) = (x - 30) * (x - 30) + (y - 33) * (y - 33) <= 15 * 15;
  }
  const ContourSet c = extract_contours(disc, 0.0);
  const BinaryRaster thin = render_contours(c, 1);
  std::set<PixelPoint> traced;
  for (const auto& k : c.contours()) traced.insert(k.points.begin(), k.points.end());
  CHECK(count_set(thin) == traced.size());
  for (const auto& p : traced) CHECK(thin.at(p.x, p.y) == 1);

  for (int stroke : {2, 3, 5}) {
    const ContourSet again = extract_contours(render_contours(c, stroke), 0.0);
    CHECK(t::hausdorff(t::all_points(c), t::all_points(again)) <= stroke);
  }
  CHECK_THROWS_AS(render_contours(c, 0), Error);
}

TEST_CASE("contours: json export is closed and tagged") {
  const RasterSpec spec(16, 16, Window{});
  const auto j = contours_to_json(extract_contours(rect(spec, 5, 5, 7, 7), 0.0));
  CHECK(j.at("width") == 16);
  const auto& pts = j.at("contours").at(0).at("points");
  CHECK(pts.size() == 9);
  CHECK(pts.front() == pts.back());
  CHECK(j.at("contours").at(0).at("kind") == "outer");
}

TEST_CASE("distance transform matches exhaustive search") {
  std::mt19937_64 rng(31);
  for (const auto& spec : {RasterSpec(40, 40, Window{}), RasterSpec(37, 23, Window{})}) {
    for (int trial = 0; trial < 5; ++trial) {
      BinaryRaster seeds(spec);
      std::uniform_int_distribution<std::size_t> pick(0, seeds.size() - 1);
      for (int k = 0; k < 1 + trial * 3; ++k) seeds[pick(rng)] = 1;
      const auto dt = squared_distance_transform(seeds);
      const auto oracle = t::brute_sq_distance(seeds);
      for (std::size_t k = 0; k < seeds.size(); ++k) CHECK(dt[k] == oracle[k]);
    }
    const auto empty = squared_distance_transform(BinaryRaster(spec));
    for (double v : empty.values()) CHECK(std::isinf(v));
  }
}

TEST_CASE("dilation: disc brush, monotone in radius") {
  const RasterSpec spec(48, 48, Window{});
  std::mt19937_64 rng(41);
  const BinaryRaster r = t::random_blobs(spec, rng, 3);
  const auto d2 = t::brute_sq_distance(r);
  BinaryRaster prev = r;
  for (int radius : {0, 1, 2, 4, 7}) {
    const BinaryRaster d = dilate_disc(r, radius);
    for (std::size_t k = 0; k < d.size(); ++k) {
      CHECK(d[k] == (d2[k] <= radius * radius));
      CHECK(d[k] >= prev[k]);
    }
    prev = d;
  }
}

TEST_CASE("object keep-out mask") {
  const RasterSpec spec;
  const Mesh posed = pose_mesh(normalize_mesh(t::box_mesh(1, 0.6, 0.4)), SceneParams::tied(0.5, 0.6, 0.7));
  const BinaryRaster footprint = rasterize_hard(footprint_triangles(posed), spec);
  CHECK(object_keepout_mask(posed, spec, 0).mask == footprint);
  const auto d2 = t::brute_sq_distance(footprint);
  BinaryRaster prev = footprint;
  for (int d : {1, 4, 9}) {
    const BinaryRaster m = object_keepout_mask(posed, spec, d).mask;
    for (std::size_t k = 0; k < m.size(); ++k) {
      CHECK(m[k] == (d2[k] <= d * d));
      CHECK(m[k] >= prev[k]);
    }
    prev = m;
  }
}

TEST_CASE("animated mask: frame count and spec checks") {
  const RasterSpec spec(32, 32, Window{});
  std::vector<BinaryRaster> four(4, rect(spec, 2, 2, 20, 20));
  CHECK(code_of([&] { animated_keepout_mask(four); }) == ErrorCode::kInvalidFrameCount);
  std::vector<BinaryRaster> six(6, rect(spec, 2, 2, 20, 20));
  CHECK(code_of([&] { animated_keepout_mask(six); }) == ErrorCode::kInvalidFrameCount);
  std::vector<BinaryRaster> mixed(5, rect(spec, 2, 2, 20, 20));
  mixed[3] = BinaryRaster(RasterSpec(33, 32, Window{}), 1);
  CHECK(code_of([&] { animated_keepout_mask(mixed); }) == ErrorCode::kSpecMismatch);
  std::vector<BinaryRaster> apart(5, BinaryRaster(spec));
  apart[0] = rect(spec, 0, 0, 3, 3);
  apart[1] = rect(spec, 10, 10, 13, 13);
  CHECK(code_of([&] { animated_keepout_mask(apart); }) == ErrorCode::kNoStaticRegion);
}

TEST_CASE("animated mask: identical frames forbid nothing") {
  const RasterSpec spec(32, 32, Window{});
  const std::vector<BinaryRaster> same(5, rect(spec, 3, 4, 20, 25));
  CHECK(count_set(animated_keepout_mask(same).mask) == 0);
}

TEST_CASE("animated mask: half and full frames split at the midline") {
  const RasterSpec spec(32, 32, Window{});
  std::vector<BinaryRaster> frames(5, BinaryRaster(spec, 1));
  frames[0] = rect(spec, 0, 0, 15, 31);
  const BinaryRaster m = animated_keepout_mask(frames).mask;
  CHECK(m.at(13, 10) == 0);  // two pixels left of the midline
  CHECK(m.at(17, 10) == 1);  // two pixels right of it
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) CHECK(m.at(x, y) == (x >= 16));
  }
}

TEST_CASE("animated mask: disjoint blobs give the dynamic Voronoi cell") {
  const RasterSpec spec(40, 40, Window{});
  const BinaryRaster still = rect(spec, 4, 4, 9, 9);
  std::vector<BinaryRaster> frames(5, still);
  frames[2] = rect(spec, 28, 25, 33, 31, still);
  const BinaryRaster m = animated_keepout_mask(frames).mask;
  const auto ds = t::brute_sq_distance(still);
  const auto dd = t::brute_sq_distance(rect(spec, 28, 25, 33, 31));
  for (std::size_t k = 0; k < m.size(); ++k) CHECK(m[k] == (dd[k] < ds[k]));
}

TEST_CASE("closed regions: rectangle, open stroke, nested squares") {
  const RasterSpec spec(40, 40, Window{});
  const RegionSet one = extract_closed_regions(outline(spec, 5, 5, 20, 15));
  REQUIRE(one.regions.size() == 1);
  CHECK(one.regions[0].area() == 14u * 9u);

  BinaryRaster c = outline(spec, 5, 5, 20, 15);
  for (int y = 8; y <= 12; ++y) c.at(20, y) = 0;
  CHECK(code_of([&] { extract_closed_regions(c); }) == ErrorCode::kNoClosedRegions);

  const RegionSet nested = extract_closed_regions(outline(spec, 10, 10, 15, 15, outline(spec, 3, 3, 30, 30)));
  REQUIRE(nested.regions.size() == 2);
  std::set<std::uint32_t> seen;
  for (const auto& r : nested.regions) {
    for (auto p : r.pixels) {
      CHECK(seen.insert(p).second);
      const int x = static_cast<int>(p % 40), y = static_cast<int>(p / 40);
      CHECK(x > 0);
      CHECK(y > 0);
      CHECK(x < 39);
      CHECK(y < 39);
    }
  }
  CHECK(areas(nested) == std::multiset<std::size_t>{16, 26 * 26 - 36});
}

TEST_CASE("greedy merge: rule examples") {
  const RasterSpec spec(64, 64, Window{});
  CHECK(areas(greedy_merge(synthetic_regions({1, 2, 3, 4, 5, 6}, spec), 4)) == std::multiset<std::size_t>{4, 5, 6, 6});
  const RegionSet four = synthetic_regions({9, 3, 7, 1}, spec);
  const RegionSet same = greedy_merge(four, 4);
  REQUIRE(same.regions.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(same.regions[k].pixels == four.regions[k].pixels);

  const RegionSet five = synthetic_regions({5, 5, 5, 5, 5}, spec);
  const RegionSet merged = greedy_merge(five, 4);
  REQUIRE(merged.regions.size() == 4);
  std::vector<std::uint32_t> expect = five.regions[0].pixels;
  expect.insert(expect.end(), five.regions[1].pixels.begin(), five.regions[1].pixels.end());
  CHECK(merged.regions[0].pixels == expect);
  CHECK(merged.regions[1].pixels == five.regions[2].pixels);
}

TEST_CASE("greedy merge: pixels are conserved") {
  const RasterSpec spec(64, 64, Window{});
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> sizes(4 + rng() % 8);
    for (auto& s : sizes) s = 1 + rng() % 30;
    const RegionSet in = synthetic_regions(sizes, spec);
    const RegionSet out = greedy_merge(in, 4);
    CHECK(out.regions.size() == 4);
    std::vector<std::uint32_t> a, b;
    for (const auto& r : in.regions) a.insert(a.end(), r.pixels.begin(), r.pixels.end());
    for (const auto& r : out.regions) {
      CHECK(std::is_sorted(r.pixels.begin(), r.pixels.end()));
      b.insert(b.end(), r.pixels.begin(), r.pixels.end());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("region mask") {
  const RasterSpec spec(16, 16, Window{});
  Region r;
  r.pixels = {0, 17, 255};
  const BinaryRaster m = region_mask(spec, r);
  CHECK(count_set(m) == 3);
  CHECK(m.at(1, 1) == 1);
  CHECK(m.at(15, 15) == 1);
}
