// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowcast/contour.hpp"
#include "shadowcast/fractal.hpp"
#include "shadowcast/optimizer.hpp"
#include "shadowcast/raster.hpp"
#include "shadowcast/services.hpp"

namespace shadowcast {

enum class RunMode { kStatic, kAnimated, kDataset };

inline constexpr int kConfigSchemaVersion = 1;

// Angles are kept in degrees here, as written in config files; conversion to
// radians happens when the engine settings are built.
struct PipelineConfig {
  RunMode mode = RunMode::kStatic;
  std::string mesh;
  std::vector<std::string> keyframes;  // animated mode: exactly five meshes
  std::string drawing_dir;             // dataset mode

  int raster_width = 256;
  int raster_height = 256;
  Window window{};
  double sigma = kDefaultSigma;
  std::vector<int> scales = kDefaultScales;
  double object_length = kObjectLength;
  double light_distance = kLightDistance;

  std::uint64_t seed = 0;
  std::vector<double> elevations_deg = {20, 35, 50, 65};
  double theta_half_width_deg = 15;
  double phi_half_width_deg = 7.5;
  double alpha_half_width_deg = 30;

  double step0_deg = 5;
  double shrink = 0.5;
  int max_iters = 30;
  double tol_deg = 0.1;
  double fd_step_deg = 0.5;

  double min_area_frac = kDefaultMinAreaFraction;
  int stroke_px = kDefaultStrokePx;
  int dilate_px = kDefaultDilatePx;
  std::optional<int> band_px;  // default stroke_px + 1

  Endpoints endpoints;
  bool mock = false;
  double timeout_s = 120;
  int retries = 2;
  int concurrency = 4;
  std::string verify_test_header;

  std::size_t top_k = 4;
  std::optional<std::string> subject_override;
  std::string output_dir = "out";
  std::string run_id;   // empty: derived from the configuration
  unsigned workers = 0; // optimizer threads; 0 = hardware concurrency

  RasterSpec raster_spec() const { return {raster_width, raster_height, window}; }
  ObjectiveSettings objective_settings() const;
  GridSettings grid_settings() const;
  OptimizerConfig optimizer_config() const;
  RetryPolicy retry_policy() const;
  int erase_band_px() const { return band_px.value_or(stroke_px + 1); }

  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;
  /// validate() plus: every endpoint is set, unless mock services are used.
  void validate_services() const;
};

std::string_view run_mode_name(RunMode mode);

nlohmann::json to_json(const PipelineConfig& cfg);
/// Missing keys keep their defaults; unknown keys and wrong types are ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);

/// Snapshot recorded in manifests: the configuration without invocation-local
/// fields (output directory, worker count, mock endpoint addresses).
nlohmann::json config_snapshot(const PipelineConfig& cfg);

}  // namespace shadowcast
