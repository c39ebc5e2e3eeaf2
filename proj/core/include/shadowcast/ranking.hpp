// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shadowcast/contour.hpp"
#include "shadowcast/geometry.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

inline constexpr std::size_t kDefaultTopK = 4;

struct ScoreBundle {
  double clip = 0.0;  // image-text embedding similarity, > 0
  double ir = 0.0;    // unnormalized reward
  double hps = 0.0;   // preference score in [0, 1]
  friend bool operator==(const ScoreBundle&, const ScoreBundle&) = default;
};

struct Deltas {
  double clip = 0.0;
  double ir = 0.0;
  double hps = 0.0;
};

/// Standard normal CDF.
double gaussian_cdf(double x);

/// Keep iff the full drawing scores at least as well as the partial one on
/// both reward and preference.
bool contribution_filter(const ScoreBundle& full, const ScoreBundle& partial);

/// clip: squared ratio; ir: difference of squared normal CDFs; hps: difference
/// of squares. Throws DivisionDomain when partial.clip <= 0.
Deltas deltas(const ScoreBundle& full, const ScoreBundle& partial);

inline double rank_score(const Deltas& d) { return d.clip * d.ir * d.hps; }

struct PromptProposal {
  std::string reasoning;
  std::string description;
  std::string component;
};

struct CompositionCandidate {
  std::size_t index = 0;
  SceneParams params;
  std::optional<ContourSet> contour;
  PromptProposal prompt;
  GrayImage drawing_full;
  GrayImage drawing_partial;
  GrayImage composite;
  std::optional<ScoreBundle> scores_full;
  std::optional<ScoreBundle> scores_partial;
  bool vqa_pass = false;
  std::optional<double> rank_score;
  std::optional<std::string> rejection;

  bool rejected() const { return rejection.has_value(); }
};

/// Scores every non-rejected candidate that carries both bundles and returns
/// the indices (into cands) of the best k by descending score, ties kept in
/// input order.
std::vector<std::size_t> rank(std::span<CompositionCandidate> cands, std::size_t k = kDefaultTopK);

}  // namespace shadowcast
