// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <vector>

#include "shadowcast/contour.hpp"
#include "shadowcast/error.hpp"

namespace shadowcast {

RegionSet extract_closed_regions(const BinaryRaster& strokes) {
  const int w = strokes.width();
  const int h = strokes.height();
  const auto n = strokes.size();
  constexpr std::uint32_t kUnvisited = 0xffffffffu;
  constexpr std::uint32_t kOpen = 0xfffffffeu;  // background reachable from the border
  std::vector<std::uint32_t> label(n, kUnvisited);
  std::vector<std::uint32_t> stack;

  const auto flood = [&](std::uint32_t seed, std::uint32_t tag, std::vector<std::uint32_t>* members) {
    label[seed] = tag;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::uint32_t k = stack.back();
      stack.pop_back();
      if (members) members->push_back(k);
      const int x = static_cast<int>(k % w);
      const int y = static_cast<int>(k / w);
      const int nx[4] = {x + 1, x - 1, x, x};
      const int ny[4] = {y, y, y + 1, y - 1};
      for (int d = 0; d < 4; ++d) {
        if (nx[d] < 0 || ny[d] < 0 || nx[d] >= w || ny[d] >= h) continue;
        const auto nk = static_cast<std::uint32_t>(ny[d] * w + nx[d]);
        if (label[nk] != kUnvisited || strokes[nk]) continue;
        label[nk] = tag;
        stack.push_back(nk);
      }
    }
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x != 0 && y != 0 && x != w - 1 && y != h - 1) continue;
      const auto k = static_cast<std::uint32_t>(y * w + x);
      if (!strokes[k] && label[k] == kUnvisited) flood(k, kOpen, nullptr);
    }
  }

  RegionSet out{strokes.spec(), {}};
  for (std::uint32_t k = 0; k < n; ++k) {
    if (strokes[k] || label[k] != kUnvisited) continue;
    Region region;
    region.order = out.regions.size();
    flood(k, static_cast<std::uint32_t>(region.order), &region.pixels);
    std::sort(region.pixels.begin(), region.pixels.end());
    out.regions.push_back(std::move(region));
  }
  if (out.regions.empty()) throw Error(ErrorCode::kNoClosedRegions, "drawing has no region enclosed by strokes");
  return out;
}

RegionSet greedy_merge(RegionSet set, std::size_t target) {
  auto& regions = set.regions;
  const auto smaller = [&](std::size_t a, std::size_t b) {
    if (regions[a].area() != regions[b].area()) return regions[a].area() < regions[b].area();
    return regions[a].order < regions[b].order;
  };
  while (regions.size() > std::max<std::size_t>(target, 1)) {
    std::vector<std::size_t> idx(regions.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::partial_sort(idx.begin(), idx.begin() + 2, idx.end(), smaller);
    const std::size_t a = std::min(idx[0], idx[1]);
    const std::size_t b = std::max(idx[0], idx[1]);

    Region merged;
    merged.order = std::min(regions[a].order, regions[b].order);
    merged.pixels.reserve(regions[a].area() + regions[b].area());
    std::merge(regions[a].pixels.begin(), regions[a].pixels.end(), regions[b].pixels.begin(),
               regions[b].pixels.end(), std::back_inserter(merged.pixels));
    regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(b));
    regions[a] = std::move(merged);
  }
  return set;
}

BinaryRaster region_mask(const RasterSpec& spec, const Region& region) {
  BinaryRaster out(spec);
  for (auto k : region.pixels) out[k] = 1;
  return out;
}

}  // namespace shadowcast
