// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/morphology.hpp"

#include <cmath>
#include <vector>

namespace shadowcast {
namespace {

// Lower envelope of parabolas q -> (q - v)^2 + f(v) over one line
// (Felzenszwalb and Huttenlocher). Infinite samples are skipped.
void lower_envelope(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                    std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (std::isinf(f[q])) continue;
    double s = 0.0;
    while (k >= 0) {
      const int p = v[k];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInfiniteDistance : s;
  }
  if (k < 0) {
    d.assign(n, kInfiniteDistance);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (j < k && z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

Grid<double> squared_distance_transform(const BinaryRaster& seeds) {
  const int w = seeds.width();
  const int h = seeds.height();
  Grid<double> out(seeds.spec(), kInfiniteDistance);
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    if (seeds[k]) out[k] = 0.0;
  }
  std::vector<double> f, d;
  std::vector<int> v;
  std::vector<double> z;

  f.resize(h);
  d.resize(h);
  v.resize(h);
  z.resize(h);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < h; ++j) f[j] = out.at(i, j);
    lower_envelope(f, d, v, z);
    for (int j = 0; j < h; ++j) out.at(i, j) = d[j];
  }

  f.resize(w);
  d.resize(w);
  v.resize(w);
  z.resize(w);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) f[i] = out.at(i, j);
    lower_envelope(f, d, v, z);
    for (int i = 0; i < w; ++i) out.at(i, j) = d[i];
  }
  return out;
}

BinaryRaster dilate_disc(const BinaryRaster& raster, int radius) {
  if (radius <= 0) return raster;
  const Grid<double> dist = squared_distance_transform(raster);
  const double r2 = static_cast<double>(radius) * radius;
  BinaryRaster out(raster.spec());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = dist[k] <= r2;
  return out;
}

}  // namespace shadowcast
