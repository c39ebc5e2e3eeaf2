// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "shadowcast/error.hpp"

namespace shadowcast {

FreeParams free_params(const SceneParams& params) { return {params.theta, params.phi, params.alpha}; }

SceneParams from_free(const FreeParams& free) { return SceneParams::tied(free[0], free[1], free[2]); }

bool ParamBounds::contains(const FreeParams& p) const {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] >= lower[k] && p[k] <= upper[k])) return false;
  }
  return true;
}

FreeParams ParamBounds::clamp(const FreeParams& p) const {
  FreeParams out{};
  for (std::size_t k = 0; k < p.size(); ++k) out[k] = std::clamp(p[k], lower[k], upper[k]);
  return out;
}

StartGrid init_grid(std::uint64_t seed, const GridSettings& settings) {
  if (settings.azimuth_count < 1 || settings.elevations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least one azimuth and one elevation");
  }
  const double spacing = 2.0 * std::numbers::pi / settings.azimuth_count;
  const std::size_t n_elev = settings.elevations.size();
  const std::size_t n = static_cast<std::size_t>(settings.azimuth_count) * n_elev;

  StartGrid grid;
  grid.starts.reserve(n);
  grid.bounds.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Each start has its own stream so a start's rotation never depends on
    // how many other starts exist.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double alpha = unit * 2.0 * std::numbers::pi;

    const double theta = static_cast<double>(k / n_elev) * spacing;
    const double phi = settings.elevations[k % n_elev];
    grid.starts.push_back(SceneParams::tied(theta, phi, alpha));
    grid.bounds.push_back(ParamBounds{
        {theta - settings.theta_half_width, phi - settings.phi_half_width, alpha - settings.alpha_half_width},
        {theta + settings.theta_half_width, phi + settings.phi_half_width, alpha + settings.alpha_half_width}});
  }
  return grid;
}

FreeObjective fd_objective(const Mesh& mesh, const ObjectiveSettings& settings) {
  auto shared_mesh = std::make_shared<const Mesh>(mesh);
  return [shared_mesh, settings](const FreeParams& p) -> std::optional<double> {
    try {
      return shadow_fd(*shared_mesh, from_free(p), settings).fd;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kEmptyShadow || e.code() == ErrorCode::kAbovePlaneLight) return std::nullopt;
      throw;
    }
  };
}

std::optional<FreeParams> gradient_fd(const FreeObjective& f, const FreeParams& p, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be positive");
  FreeParams g{};
  for (std::size_t k = 0; k < p.size(); ++k) {
    FreeParams hi = p;
    FreeParams lo = p;
    hi[k] += h;
    lo[k] -= h;
    const auto f_hi = f(hi);
    const auto f_lo = f(lo);
    if (!f_hi || !f_lo) return std::nullopt;
    g[k] = (*f_hi - *f_lo) / (2.0 * h);
  }
  return g;
}

OptimResult optimize_local(const FreeObjective& f, const SceneParams& start, const ParamBounds& bounds,
                           const OptimizerConfig& cfg) {
  OptimResult result;
  result.init = start;
  result.final = start;

  FreeParams p = free_params(start);
  if (!bounds.contains(p)) throw Error(ErrorCode::kInvalidArgument, "start lies outside its bounds");
  const auto fd0 = f(p);
  if (!fd0) {
    result.degenerate = true;
    result.fd_init = result.fd_final = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  double fd = *fd0;
  result.fd_init = fd;
  result.trace.push_back({p, fd, true});

  double step = cfg.step0;
  std::optional<FreeParams> direction;
  while (result.iterations < cfg.max_iters && step >= cfg.tol) {
    if (!direction) {
      const auto g = gradient_fd(f, p, cfg.fd_step);
      if (!g) break;
      const double norm = std::hypot((*g)[0], (*g)[1], (*g)[2]);
      if (!(norm > 0.0)) break;
      direction = FreeParams{(*g)[0] / norm, (*g)[1] / norm, (*g)[2] / norm};
    }
    FreeParams candidate{};
    for (std::size_t k = 0; k < p.size(); ++k) candidate[k] = p[k] + step * (*direction)[k];
    candidate = bounds.clamp(candidate);
    // Projection pinned the ascent direction to the current point: a constrained stationary point.
    if (candidate == p) break;

    ++result.iterations;
    const auto value = f(candidate);
    if (value && *value > fd) {
      p = candidate;
      fd = *value;
      direction.reset();
      ++result.accepted_steps;
      result.trace.push_back({candidate, fd, true});
    } else {
      step *= cfg.shrink;
      result.trace.push_back({candidate, value.value_or(std::numeric_limits<double>::quiet_NaN()), false});
    }
  }
  result.final = from_free(p);
  result.fd_final = fd;
  return result;
}

std::vector<OptimResult> run_all_starts(const FreeObjective& f, const StartGrid& grid, const OptimizerConfig& cfg,
                                        unsigned workers) {
  const std::size_t n = grid.starts.size();
  std::vector<OptimResult> results(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) results[k] = optimize_local(f, grid.starts[k], grid.bounds[k], cfg);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
          try {
            results[k] = optimize_local(f, grid.starts[k], grid.bounds[k], cfg);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void write_trace_jsonl(std::ostream& out, const std::vector<OptimResult>& results) {
  for (std::size_t k = 0; k < results.size(); ++k) {
    int step = 0;
    for (const TraceEntry& t : results[k].trace) {
      if (!t.accepted) continue;
      nlohmann::json rec{{"start", k}, {"step", step++},      {"theta", t.params[0]},
                         {"phi", t.params[1]}, {"alpha", t.params[2]}, {"fd", t.fd}};
      out << rec.dump() << '\n';
    }
  }
}

}  // namespace shadowcast
