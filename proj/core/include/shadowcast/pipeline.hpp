// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shadowcast/config.hpp"
#include "shadowcast/services.hpp"

namespace shadowcast {

inline constexpr int kManifestSchemaVersion = 1;

std::string_view engine_version();

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitServiceFailure = 3,
  kExitNoSurvivors = 4,
};

struct RunOutcome {
  nlohmann::json manifest;
  std::filesystem::path run_dir;
  int exit_code = kExitOk;
};

/// Run directory name: configured run_id, else a digest of the snapshot.
std::string resolve_run_id(const PipelineConfig& cfg);

/// Grid initialisation and local optimisation only. Writes summary.json and
/// trace.jsonl into the run directory.
RunOutcome run_optimize(const PipelineConfig& cfg);

/// Full static pipeline against the given services. Artifacts are staged in a
/// temporary directory and renamed into place once complete.
RunOutcome run_pipeline(const PipelineConfig& cfg, ServiceTransport& services);

/// As run_pipeline with five keyframe meshes sharing one normalisation.
RunOutcome run_animated(const PipelineConfig& cfg, ServiceTransport& services);

struct DatasetReport {
  std::size_t drawings = 0;
  std::size_t pairs = 0;
  std::vector<std::string> skipped;
};

/// Builds contour/drawing training pairs from every PNG in drawing_dir.
DatasetReport run_dataset(const std::filesystem::path& drawing_dir, const std::filesystem::path& out_dir,
                          int stroke_px = 1, std::size_t regions = 4);

}  // namespace shadowcast
