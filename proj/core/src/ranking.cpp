// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

bool contribution_filter(const ScoreBundle& full, const ScoreBundle& partial) {
  return full.ir >= partial.ir && full.hps >= partial.hps;
}

Deltas deltas(const ScoreBundle& full, const ScoreBundle& partial) {
  if (!(partial.clip > 0.0)) {
    throw Error(ErrorCode::kDivisionDomain, "partial CLIP score must be positive, got " + std::to_string(partial.clip));
  }
  const double cdf_full = gaussian_cdf(full.ir);
  const double cdf_partial = gaussian_cdf(partial.ir);
  return Deltas{(full.clip * full.clip) / (partial.clip * partial.clip), cdf_full * cdf_full - cdf_partial * cdf_partial,
                full.hps * full.hps - partial.hps * partial.hps};
}

std::vector<std::size_t> rank(std::span<CompositionCandidate> cands, std::size_t k) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    auto& c = cands[i];
    if (c.rejected() || !c.scores_full || !c.scores_partial) continue;
    c.rank_score = rank_score(deltas(*c.scores_full, *c.scores_partial));
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return *cands[a].rank_score > *cands[b].rank_score; });
  if (order.size() > k) order.resize(k);
  return order;
}

}  // namespace shadowcast
