// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "scenes.hpp"
#include "shadowcast/optimizer.hpp"

using namespace shadowcast;
namespace t = shadowcast::testing;

namespace {

std::optional<double> neg_sq(const FreeParams& p) { return -(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

ParamBounds generous() { return ParamBounds{{-1, -1, -1}, {1, 1, 1}}; }

}  // namespace

TEST_CASE("grid: 48 tied starts on 12 azimuths and 4 elevations") {
  const StartGrid g = init_grid(42);
  REQUIRE(g.starts.size() == 48);
  REQUIRE(g.bounds.size() == 48);
  std::vector<long> az;
  for (std::size_t k = 0; k < 48; ++k) {
    const SceneParams& s = g.starts[k];
    CHECK(s.gamma == s.theta);
    CHECK(s.r == doctest::Approx(0.8));
    CHECK(s.alpha >= 0.0);
    CHECK(s.alpha < 2 * std::numbers::pi);
    CHECK(g.bounds[k].contains(free_params(s)));
    az.push_back(std::lround(s.theta / kDegree));
    const double elev = s.phi / kDegree;
    CHECK((std::abs(elev - 20) < 1e-9 || std::abs(elev - 35) < 1e-9 || std::abs(elev - 50) < 1e-9 ||
           std::abs(elev - 65) < 1e-9));
  }
  std::sort(az.begin(), az.end());
  std::vector<long> expected;
  for (int k = 0; k < 12; ++k) expected.insert(expected.end(), 4, k * 30);
  CHECK(az == expected);
}

TEST_CASE("grid: deterministic per seed, distinct across seeds") {
  const StartGrid a = init_grid(7), b = init_grid(7), c = init_grid(8);
  CHECK(a.starts == b.starts);
  CHECK(a.starts != c.starts);
}

TEST_CASE("grid: neighbouring azimuth cells do not overlap") {
  const StartGrid g = init_grid(1);
  for (std::size_t i = 0; i < 48; ++i) {
    for (std::size_t j = 0; j < 48; ++j) {
      if (std::lround(g.starts[i].theta / kDegree) + 30 != std::lround(g.starts[j].theta / kDegree)) continue;
      CHECK(g.bounds[i].upper[0] <= g.bounds[j].lower[0] + 1e-12);
    }
    CHECK(g.bounds[i].upper[0] - g.bounds[i].lower[0] == doctest::Approx(30 * kDegree));
    CHECK(g.bounds[i].upper[1] - g.bounds[i].lower[1] == doctest::Approx(15 * kDegree));
    CHECK(g.bounds[i].upper[2] - g.bounds[i].lower[2] == doctest::Approx(60 * kDegree));
  }
}

TEST_CASE("gradient: analytic quadratic") {
  const auto g0 = gradient_fd(neg_sq, {0, 0, 0}, 1e-3);
  REQUIRE(g0);
  for (double v : *g0) CHECK(std::abs(v) < 1e-9);
  const auto g1 = gradient_fd(neg_sq, {0.1, 0, 0}, 1e-3);
  REQUIRE(g1);
  CHECK(std::abs((*g1)[0] + 0.2) < 1e-6);
  CHECK(std::abs((*g1)[1]) < 1e-6);
  CHECK(std::abs((*g1)[2]) < 1e-6);
}

TEST_CASE("gradient: undefined probe invalidates the gradient") {
  const FreeObjective holey = [](const FreeParams& p) -> std::optional<double> {
    if (p[1] > 0.05) return std::nullopt;
    return p[0];
  };
  CHECK_FALSE(gradient_fd(holey, {0, 0.049, 0}, 0.01).has_value());
  CHECK(gradient_fd(holey, {0, 0.0, 0}, 0.01).has_value());
}

TEST_CASE("optimize: quadratic converges to the maximiser") {
  OptimizerConfig cfg;
  cfg.tol = 1e-7;
  cfg.max_iters = 200;
  cfg.fd_step = 1e-4;
  const OptimResult r = optimize_local(neg_sq, SceneParams::tied(0.1, 0.1, 0.1), generous(), cfg);
  const FreeParams f = free_params(r.final);
  for (double v : f) CHECK(std::abs(v) < 1e-3);
  CHECK(r.fd_final >= r.fd_init);
  CHECK(r.accepted_steps > 0);
}

TEST_CASE("optimize: zero-width bounds keep the start") {
  const SceneParams s = SceneParams::tied(0.3, 0.4, 0.5);
  const FreeParams p = free_params(s);
  const OptimResult r = optimize_local([](const FreeParams& q) { return std::optional<double>(q[0] + q[1]); }, s,
                                       ParamBounds{p, p});
  CHECK(r.final == s);
  CHECK(r.fd_final == r.fd_init);
  CHECK(r.accepted_steps == 0);
}

TEST_CASE("optimize: degenerate start") {
  const OptimResult r = optimize_local([](const FreeParams&) { return std::optional<double>{}; },
                                       SceneParams::tied(0, 0.3, 0), generous());
  CHECK(r.degenerate);
  CHECK(r.accepted_steps == 0);
  CHECK(r.final == r.init);
}

TEST_CASE("optimize: trace is monotone and inside the bounds") {
  const FreeObjective bumpy = [](const FreeParams& p) -> std::optional<double> {
    return std::sin(5 * p[0]) * std::cos(3 * p[1]) + 0.3 * std::sin(7 * p[2] + p[0]);
  };
  const StartGrid g = init_grid(3);
  for (std::size_t k = 0; k < 48; ++k) {
    const OptimResult r = optimize_local(bumpy, g.starts[k], g.bounds[k]);
    double last = -1e300;
    for (const auto& e : r.trace) {
      CHECK(g.bounds[k].contains(e.params));
      if (!e.accepted) continue;
      CHECK(e.fd > last);
      last = e.fd;
    }
    CHECK(r.fd_final >= r.fd_init);
    CHECK(g.bounds[k].contains(free_params(r.final)));
  }
}

TEST_CASE("run_all_starts: index aligned and schedule independent") {
  const Mesh mesh = normalize_mesh(t::table_mesh());
  ObjectiveSettings settings;
  settings.spec = RasterSpec(64, 64, Window{});
  settings.scales = {2, 4, 8};
  const FreeObjective f = fd_objective(mesh, settings);
  OptimizerConfig cfg;
  cfg.max_iters = 3;
  StartGrid g = init_grid(5);
  g.starts.resize(8);
  g.bounds.resize(8);
  const auto serial = run_all_starts(f, g, cfg, 1);
  const auto parallel = run_all_starts(f, g, cfg, 4);
  REQUIRE(serial.size() == 8);
  REQUIRE(parallel.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(serial[k].init == g.starts[k]);
    CHECK(serial[k].final == parallel[k].final);
    CHECK(serial[k].fd_final == parallel[k].fd_final);
    CHECK(serial[k].trace.size() == parallel[k].trace.size());
  }
  std::ostringstream out;
  write_trace_jsonl(out, serial);
  std::size_t accepted = 0;
  for (const auto& r : serial) {
    accepted += static_cast<std::size_t>(std::count_if(r.trace.begin(), r.trace.end(), [](const TraceEntry& e) { return e.accepted; }));
  }
  const std::string text = out.str();
  CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == accepted);
}

TEST_CASE("fd objective: light below the object is undefined, not an error") {
  const Mesh tall = t::box_mesh(0.05, 0.05, 5.0);
  const FreeObjective f = fd_objective(tall, ObjectiveSettings{});
  CHECK_FALSE(f({0.0, 20 * kDegree, 0.0}).has_value());
}
