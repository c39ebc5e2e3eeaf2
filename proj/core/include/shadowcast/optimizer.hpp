// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "shadowcast/fractal.hpp"
#include "shadowcast/geometry.hpp"

namespace shadowcast {

inline constexpr double kDegree = std::numbers::pi / 180.0;

/// The three free scene coordinates, in this order: theta, phi, alpha.
using FreeParams = std::array<double, 3>;

FreeParams free_params(const SceneParams& params);
/// Rebuilds tied scene parameters (gamma = theta, r = 0.8 canvas radii).
SceneParams from_free(const FreeParams& free);

struct ParamBounds {
  FreeParams lower{};
  FreeParams upper{};

  bool contains(const FreeParams& p) const;
  FreeParams clamp(const FreeParams& p) const;
};

struct GridSettings {
  int azimuth_count = 12;
  std::vector<double> elevations = {20 * kDegree, 35 * kDegree, 50 * kDegree, 65 * kDegree};
  double theta_half_width = 15 * kDegree;
  double phi_half_width = 7.5 * kDegree;
  double alpha_half_width = 30 * kDegree;
};

struct StartGrid {
  std::vector<SceneParams> starts;
  std::vector<ParamBounds> bounds;
};

/// Azimuth-major grid: start k has azimuth (k / elevations) * 30 deg and
/// elevation elevations[k % elevations]. The rotation of each start is drawn
/// from a generator seeded by (seed, k).
StartGrid init_grid(std::uint64_t seed, const GridSettings& settings = {});

/// Function to maximize over the free coordinates. Returns nullopt where the
/// value is undefined (for instance an empty shadow).
using FreeObjective = std::function<std::optional<double>(const FreeParams&)>;

/// Shadow FD of a mesh as a FreeObjective.
FreeObjective fd_objective(const Mesh& mesh, const ObjectiveSettings& settings);

/// Central-difference gradient; nullopt if any probe is undefined.
std::optional<FreeParams> gradient_fd(const FreeObjective& f, const FreeParams& p, double h);

struct OptimizerConfig {
  double step0 = 5 * kDegree;
  double shrink = 0.5;
  int max_iters = 30;
  double tol = 0.1 * kDegree;
  double fd_step = 0.5 * kDegree;
};

struct TraceEntry {
  FreeParams params{};
  double fd = 0.0;
  bool accepted = false;
};

struct OptimResult {
  SceneParams init;
  SceneParams final;
  double fd_init = 0.0;
  double fd_final = 0.0;
  int iterations = 0;
  int accepted_steps = 0;
  bool degenerate = false;
  /// The start point followed by every evaluated candidate.
  std::vector<TraceEntry> trace;
};

/// Projected ascent with normalized gradient steps and step halving on
/// rejection. Candidates are clamped into bounds and accepted only if they
/// strictly improve the objective.
OptimResult optimize_local(const FreeObjective& f, const SceneParams& start, const ParamBounds& bounds,
                           const OptimizerConfig& cfg = {});

/// Runs every start; results are index-aligned with grid.starts. workers = 0
/// picks the hardware concurrency; 1 runs serially.
std::vector<OptimResult> run_all_starts(const FreeObjective& f, const StartGrid& grid,
                                        const OptimizerConfig& cfg = {}, unsigned workers = 0);

/// One JSON object per accepted step, tagged with its start index.
void write_trace_jsonl(std::ostream& out, const std::vector<OptimResult>& results);

}  // namespace shadowcast
