// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/pipeline.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "shadowcast/compose.hpp"
#include "shadowcast/contour.hpp"
#include "shadowcast/encoding.hpp"
#include "shadowcast/error.hpp"
#include "shadowcast/fractal.hpp"
#include "shadowcast/image_io.hpp"
#include "shadowcast/mesh_io.hpp"
#include "shadowcast/optimizer.hpp"
#include "shadowcast/render.hpp"

namespace shadowcast {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const SceneParams& p) {
  return json{{"theta_deg", p.theta / kDegree},
              {"phi_deg", p.phi / kDegree},
              {"alpha_deg", p.alpha / kDegree},
              {"r", p.r},
              {"gamma_deg", p.gamma / kDegree}};
}

json scores_json(const ScoreBundle& s) { return json{{"clip", s.clip}, {"ir", s.ir}, {"hps", s.hps}}; }

json error_json(ErrorCode code, const std::string& message) {
  return json{{"code", std::string(error_code_name(code))}, {"message", message}};
}

std::string start_dir_name(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "start_%02zu", k);
  return buf;
}

// Stages a run directory and moves it into place only once complete.
class StagedDir {
 public:
  StagedDir(const fs::path& out_dir, const std::string& run_id)
      : final_(out_dir / run_id), temp_(out_dir / (".tmp-" + run_id + "-" + std::to_string(::getpid()))) {
    fs::create_directories(out_dir);
    fs::remove_all(temp_);
    fs::create_directories(temp_);
  }
  ~StagedDir() {
    std::error_code ec;
    if (!committed_) fs::remove_all(temp_, ec);
  }
  StagedDir(const StagedDir&) = delete;
  StagedDir& operator=(const StagedDir&) = delete;

  const fs::path& path() const { return temp_; }
  const fs::path& final_path() const { return final_; }

  void commit() {
    fs::remove_all(final_);
    fs::rename(temp_, final_);
    committed_ = true;
  }

 private:
  fs::path final_;
  fs::path temp_;
  bool committed_ = false;
};

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

Mesh load_normalized(const std::string& path, double object_length) {
  return normalize_mesh(load_mesh(path), object_length);
}

// All keyframes share one anchor and scale: normalise their union, then split.
std::vector<Mesh> load_keyframes(const std::vector<std::string>& paths, double object_length) {
  std::vector<Mesh> raw;
  Mesh all;
  for (const auto& p : paths) {
    raw.push_back(load_mesh(p));
    const auto base = static_cast<std::uint32_t>(all.vertices.size());
    all.vertices.insert(all.vertices.end(), raw.back().vertices.begin(), raw.back().vertices.end());
    for (auto t : raw.back().triangles) all.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
  const Mesh normalized = normalize_mesh(all, object_length);
  std::vector<Mesh> out;
  std::size_t offset = 0;
  for (const auto& m : raw) {
    Mesh n;
    n.triangles = m.triangles;
    n.vertices.assign(normalized.vertices.begin() + static_cast<std::ptrdiff_t>(offset),
                      normalized.vertices.begin() + static_cast<std::ptrdiff_t>(offset + m.vertices.size()));
    offset += m.vertices.size();
    out.push_back(std::move(n));
  }
  return out;
}

std::vector<OptimResult> optimize_starts(const Mesh& mesh, const PipelineConfig& cfg) {
  const StartGrid grid = init_grid(cfg.seed, cfg.grid_settings());
  return run_all_starts(fd_objective(mesh, cfg.objective_settings()), grid, cfg.optimizer_config(), cfg.workers);
}

json optimization_record(std::size_t k, const OptimResult& r) {
  return json{{"start", k},
              {"init", params_json(r.init)},
              {"final", params_json(r.final)},
              {"fd_init", real_or_null(r.fd_init)},
              {"fd_final", real_or_null(r.fd_final)},
              {"iterations", r.iterations},
              {"accepted_steps", r.accepted_steps},
              {"degenerate", r.degenerate}};
}

enum class Status { kPending, kRanked, kRejected, kFailed };

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kRanked: return "ranked";
    case Status::kRejected: return "rejected";
    case Status::kFailed: return "failed";
    case Status::kPending: break;
  }
  return "pending";
}

struct CandidateWork {
  CompositionCandidate cand;
  Status status = Status::kPending;
  json error;                          // rejection or failure detail
  std::map<std::string, Bytes> files;  // file name inside start_NN -> bytes
  std::size_t rank_position = 0;
};

struct SceneContext {
  const PipelineConfig& cfg;
  const std::vector<Mesh>& frames;  // one mesh (static) or five keyframes
  ServiceTransport& services;
  bool animated = false;
};

void reject(CandidateWork& w, ErrorCode code, const std::string& message) {
  w.status = Status::kRejected;
  w.error = error_json(code, message);
  w.cand.rejection = std::string(error_code_name(code));
}

void reject(CandidateWork& w, const std::string& reason, const std::string& message) {
  w.status = Status::kRejected;
  w.error = json{{"code", reason}, {"message", message}};
  w.cand.rejection = reason;
}

std::uint64_t generation_seed(std::uint64_t seed, std::size_t k) {
  return hash64("generate/" + std::to_string(seed) + "/" + std::to_string(k));
}

// Errors that turn a single configuration into a rejected record.
bool is_candidate_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyShadow:
    case ErrorCode::kEmptyContourSet:
    case ErrorCode::kAbovePlaneLight:
    case ErrorCode::kNoStaticRegion:
    case ErrorCode::kFormatError:
    case ErrorCode::kMaskViolation:
    case ErrorCode::kDivisionDomain:
      return true;
    default:
      return false;
  }
}

void process_candidate(const SceneContext& ctx, const OptimResult& opt, CandidateWork& w) {
  const PipelineConfig& cfg = ctx.cfg;
  const RasterSpec spec = cfg.raster_spec();
  auto& cand = w.cand;
  if (opt.degenerate) {
    reject(w, ErrorCode::kEmptyShadow, "objective undefined at the start configuration");
    return;
  }
  cand.params = opt.final;

  const std::size_t n_frames = ctx.frames.size();
  std::vector<Mesh> posed;
  std::vector<BinaryRaster> shadows;
  std::vector<BinaryRaster> footprints;
  std::vector<ContourSet> contours;
  // Keyframes move rigidly together about the pivot of the first one, which is
  // posed exactly as during optimisation.
  const AxisBox first_box = bounding_box(ctx.frames.front());
  const Vec2 pivot(first_box.center().x(), first_box.center().y());
  for (const Mesh& m : ctx.frames) {
    posed.push_back(pose_mesh(m, cand.params, pivot));
    shadows.push_back(rasterize_hard(project_posed_shadow(posed.back(), cand.params, cfg.light_distance), spec));
    footprints.push_back(rasterize_hard(footprint_triangles(posed.back()), spec));
    contours.push_back(extract_contours(shadows.back(), cfg.min_area_frac));
  }
  cand.contour = contours.front();

  KeepoutMask keepout = object_keepout_mask(posed.front(), spec, cfg.dilate_px);
  if (ctx.animated) {
    for (std::size_t f = 1; f < n_frames; ++f) {
      const KeepoutMask m = object_keepout_mask(posed[f], spec, cfg.dilate_px);
      for (std::size_t i = 0; i < m.mask.size(); ++i) keepout.mask[i] = keepout.mask[i] | m.mask[i];
    }
    const KeepoutMask dynamic = animated_keepout_mask(shadows);
    for (std::size_t i = 0; i < dynamic.mask.size(); ++i) keepout.mask[i] = keepout.mask[i] | dynamic.mask[i];
  }

  const BinaryRaster contour_img = render_contours(contours.front(), cfg.stroke_px);
  w.files["shadow.png"] = encode_png(to_gray(shadows.front()));
  w.files["contour.png"] = encode_png(to_gray(contour_img));
  w.files["contour.json"] = [&] {
    const std::string s = contours_to_json(contours.front()).dump() + "\n";
    return Bytes(s.begin(), s.end());
  }();
  w.files["mask.png"] = encode_png(to_gray(keepout.mask));

  Bytes proposal_png = w.files["contour.png"];
  if (ctx.animated) {
    proposal_png = encode_png(frame_overlay(contours, cfg.stroke_px));
    w.files["overlay.png"] = proposal_png;
  }

  cand.prompt = propose_prompt(ctx.services, proposal_png, cfg.subject_override);
  cand.drawing_full =
      generate_drawing(ctx.services, contour_img, cand.prompt.description, keepout, generation_seed(cfg.seed, cand.index));
  cand.drawing_partial = cand.drawing_full;
  for (const auto& c : contours) cand.drawing_partial = erase_contour(cand.drawing_partial, c, cfg.erase_band_px());
  cand.composite = composite(cand.drawing_partial, shadows.front(), footprints.front());
  w.files["drawing_full.png"] = encode_png(cand.drawing_full);
  w.files["drawing_partial.png"] = encode_png(cand.drawing_partial);
  w.files["composite.png"] = encode_png(cand.composite);
  if (ctx.animated) {
    for (std::size_t f = 0; f < n_frames; ++f) {
      w.files["frame_" + std::to_string(f + 1) + ".png"] =
          encode_png(composite(cand.drawing_partial, shadows[f], footprints[f]));
    }
  }

  cand.vqa_pass = vqa_gate(ctx.services, cand.drawing_full, contours.front(), cand.prompt.component, cfg.stroke_px);
  if (!cand.vqa_pass) {
    reject(w, "VqaRejected", "coherence check answered no");
    return;
  }

  cand.scores_full = score_image(ctx.services, cand.drawing_full, cand.prompt.description);
  cand.scores_partial = score_image(ctx.services, cand.drawing_partial, cand.prompt.description);
  if (!contribution_filter(*cand.scores_full, *cand.scores_partial)) {
    reject(w, "ContributionFilter", "the drawing without the shadow contour scores higher");
    return;
  }
  // Deltas are validated here so that rank() cannot throw later.
  (void)deltas(*cand.scores_full, *cand.scores_partial);
}

json candidate_record(const CandidateWork& w, const OptimResult& opt) {
  json rec = optimization_record(w.cand.index, opt);
  rec["status"] = status_name(w.status);
  const auto& c = w.cand;
  if (!c.prompt.description.empty()) {
    rec["prompt"] = {{"reasoning", c.prompt.reasoning},
                     {"description", c.prompt.description},
                     {"component", c.prompt.component}};
  }
  if (c.scores_full) rec["vqa_pass"] = c.vqa_pass;
  if (c.scores_full) rec["scores_full"] = scores_json(*c.scores_full);
  if (c.scores_partial) rec["scores_partial"] = scores_json(*c.scores_partial);
  if (w.status == Status::kRanked) {
    const Deltas d = deltas(*c.scores_full, *c.scores_partial);
    rec["deltas"] = {{"clip", d.clip}, {"ir", d.ir}, {"hps", d.hps}};
    rec["rank_score"] = *c.rank_score;
    rec["rank"] = w.rank_position;
  }
  if (!w.error.is_null()) rec[w.status == Status::kFailed ? "failure" : "rejection"] = w.error;
  json files = json::object();
  for (const auto& [name, _] : w.files) files[name] = start_dir_name(c.index) + "/" + name;
  rec["files"] = files;
  return rec;
}

RunOutcome run_scene(const PipelineConfig& cfg, ServiceTransport& services, const std::vector<Mesh>& frames,
                     bool animated) {
  const auto t_total = Clock::now();
  const std::string run_id = resolve_run_id(cfg);
  StagedDir dir(cfg.output_dir, run_id);

  const auto t_opt = Clock::now();
  const std::vector<OptimResult> opt = optimize_starts(frames.front(), cfg);
  const double optimize_s = seconds_since(t_opt);

  const std::size_t n = opt.size();
  std::vector<CandidateWork> work(n);
  for (std::size_t k = 0; k < n; ++k) work[k].cand.index = k;

  const auto t_cand = Clock::now();
  const SceneContext ctx{cfg, frames, services, animated};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex abort_mutex;
  std::string abort_message;
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
      CandidateWork& w = work[k];
      if (abort.load()) {
        w.status = Status::kFailed;
        w.error = json{{"code", "Aborted"}, {"message", "run aborted after a service failure"}};
        continue;
      }
      try {
        process_candidate(ctx, opt[k], w);
      } catch (const Error& e) {
        if (is_candidate_rejection(e.code())) {
          reject(w, e.code(), e.what());
        } else {
          w.status = Status::kFailed;
          w.error = error_json(e.code(), e.what());
          if (e.code() == ErrorCode::kServiceError) {
            std::lock_guard lock(abort_mutex);
            if (!abort.exchange(true)) abort_message = e.what();
          }
        }
      } catch (const std::exception& e) {
        w.status = Status::kFailed;
        w.error = json{{"code", "InternalError"}, {"message", e.what()}};
        std::lock_guard lock(abort_mutex);
        if (!abort.exchange(true)) abort_message = e.what();
      }
    }
  };
  {
    const auto threads = static_cast<std::size_t>(std::max(1, cfg.concurrency));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(threads, n); ++t) pool.emplace_back(worker);
    worker();
  }
  const double candidates_s = seconds_since(t_cand);

  const bool failed = abort.load();
  std::vector<CompositionCandidate> cands;
  cands.reserve(n);
  for (auto& w : work) {
    if (w.status == Status::kPending) w.status = Status::kRanked;
    if (w.status != Status::kRanked && !w.cand.rejection) w.cand.rejection = std::string(status_name(w.status));
    cands.push_back(w.cand);
  }
  std::vector<std::size_t> order;
  if (!failed) {
    order = rank(cands, n);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      work[order[pos]].cand.rank_score = cands[order[pos]].rank_score;
      work[order[pos]].rank_position = pos + 1;
    }
  } else {
    for (auto& w : work) {
      if (w.status == Status::kRanked) {
        w.status = Status::kFailed;
        w.error = json{{"code", "Aborted"}, {"message", "run aborted after a service failure"}};
      }
    }
  }

  json records = json::array();
  std::map<std::string, int> counts{{"ranked", 0}, {"rejected", 0}, {"failed", 0}};
  std::map<std::string, int> reasons;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& w = work[k];
    ++counts[std::string(status_name(w.status))];
    if (w.status == Status::kRejected) ++reasons[w.error.at("code").get<std::string>()];
    const fs::path sub = dir.path() / start_dir_name(k);
    fs::create_directories(sub);
    for (const auto& [name, bytes] : w.files) write_file(sub / name, bytes);
    records.push_back(candidate_record(w, opt[k]));
  }

  json top = json::array();
  for (std::size_t pos = 0; pos < order.size() && pos < cfg.top_k; ++pos) {
    const auto& w = work[order[pos]];
    top.push_back(json{{"rank", pos + 1},
                       {"start", w.cand.index},
                       {"rank_score", *w.cand.rank_score},
                       {"description", w.cand.prompt.description},
                       {"files", records[w.cand.index].at("files")}});
  }

  json warnings = json::array();
  int exit_code = kExitOk;
  std::string status = "ok";
  if (failed) {
    status = "failed";
    exit_code = kExitServiceFailure;
    warnings.push_back("service failure: " + abort_message);
  } else if (top.empty()) {
    status = "no_survivors";
    exit_code = kExitNoSurvivors;
    warnings.push_back("no candidate survived filtering; the ranked list is empty");
  }

  json manifest{{"schema_version", kManifestSchemaVersion},
                {"engine_version", std::string(engine_version())},
                {"run_id", run_id},
                {"mode", animated ? "animated" : "static"},
                {"status", status},
                {"config", config_snapshot(cfg)},
                {"counts", {{"ranked", counts["ranked"]}, {"rejected", counts["rejected"]}, {"failed", counts["failed"]}}},
                {"rejection_reasons", reasons},
                {"records", records},
                {"top_k", top},
                {"warnings", warnings},
                {"timings_file", "timings.json"}};
  write_json(dir.path() / "manifest.json", manifest);
  write_json(dir.path() / "timings.json",
             json{{"optimize_s", optimize_s}, {"candidates_s", candidates_s}, {"total_s", seconds_since(t_total)}});
  dir.commit();
  return RunOutcome{std::move(manifest), dir.final_path(), exit_code};
}

}  // namespace

std::string_view engine_version() { return SHADOWCAST_VERSION; }

std::string resolve_run_id(const PipelineConfig& cfg) {
  if (!cfg.run_id.empty()) return cfg.run_id;
  return "run-" + sha256_hex(config_snapshot(cfg).dump()).substr(0, 12);
}

RunOutcome run_optimize(const PipelineConfig& cfg) {
  cfg.validate();
  if (cfg.mesh.empty()) throw Error(ErrorCode::kConfigError, "optimize needs a mesh");
  const auto t0 = Clock::now();
  const Mesh mesh = load_normalized(cfg.mesh, cfg.object_length);
  const std::string run_id = resolve_run_id(cfg);
  StagedDir dir(cfg.output_dir, run_id);

  const std::vector<OptimResult> results = optimize_starts(mesh, cfg);
  json records = json::array();
  for (std::size_t k = 0; k < results.size(); ++k) records.push_back(optimization_record(k, results[k]));
  json summary{{"schema_version", kManifestSchemaVersion},
               {"engine_version", std::string(engine_version())},
               {"run_id", run_id},
               {"mode", "optimize"},
               {"config", config_snapshot(cfg)},
               {"records", records},
               {"trace_file", "trace.jsonl"},
               {"timings_file", "timings.json"}};
  write_json(dir.path() / "summary.json", summary);
  std::ostringstream trace;
  write_trace_jsonl(trace, results);
  write_file(dir.path() / "trace.jsonl", trace.str());
  write_json(dir.path() / "timings.json", json{{"total_s", seconds_since(t0)}});
  dir.commit();
  return RunOutcome{std::move(summary), dir.final_path(), kExitOk};
}

RunOutcome run_pipeline(const PipelineConfig& cfg, ServiceTransport& services) {
  cfg.validate_services();
  if (cfg.mesh.empty()) throw Error(ErrorCode::kConfigError, "generate needs a mesh");
  const std::vector<Mesh> frames{load_normalized(cfg.mesh, cfg.object_length)};
  return run_scene(cfg, services, frames, false);
}

RunOutcome run_animated(const PipelineConfig& cfg, ServiceTransport& services) {
  if (cfg.keyframes.size() != kAnimationFrames) {
    throw Error(ErrorCode::kInvalidFrameCount,
                "animation needs exactly 5 keyframes, got " + std::to_string(cfg.keyframes.size()));
  }
  PipelineConfig c = cfg;
  c.mode = RunMode::kAnimated;
  c.validate_services();
  const std::vector<Mesh> frames = load_keyframes(c.keyframes, c.object_length);
  return run_scene(c, services, frames, true);
}

}  // namespace shadowcast
