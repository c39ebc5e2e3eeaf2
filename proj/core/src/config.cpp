// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/config.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <string>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::kConfigError, what); }

// Reads the keys of one object, rejecting any it does not know.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) config_error(name_ + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) config_error("unknown key '" + name_ + "." + key + "'");
    }
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      config_error("wrong type for '" + name_ + "." + key + "'");
    }
  }

  template <typename T>
  void get_optional(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    if (j_.at(key).is_null()) {
      out.reset();
      return;
    }
    T value{};
    get(key, value);
    out = value;
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string path(const char* key) const { return name_ + "." + key; }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

RunMode parse_mode(const std::string& s) {
  if (s == "static") return RunMode::kStatic;
  if (s == "animated") return RunMode::kAnimated;
  if (s == "dataset") return RunMode::kDataset;
  config_error("mode must be static, animated or dataset, got '" + s + "'");
}

bool is_absolute_url(const std::string& url) {
  static const std::regex kUrl(R"(^https?://[^/\s]+(/[^\s]*)?$)");
  return std::regex_match(url, kUrl);
}

template <typename T>
void require(bool ok, const char* field, const T& value, const char* range) {
  if (!ok) {
    config_error(std::string(field) + " out of range (" + range + "): " + json(value).dump());
  }
}

}  // namespace

std::string_view run_mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::kStatic: return "static";
    case RunMode::kAnimated: return "animated";
    case RunMode::kDataset: return "dataset";
  }
  return "static";
}

ObjectiveSettings PipelineConfig::objective_settings() const {
  return ObjectiveSettings{raster_spec(), sigma, scales, light_distance};
}

GridSettings PipelineConfig::grid_settings() const {
  GridSettings g;
  g.azimuth_count = 12;
  g.elevations.clear();
  for (double e : elevations_deg) g.elevations.push_back(e * kDegree);
  g.theta_half_width = theta_half_width_deg * kDegree;
  g.phi_half_width = phi_half_width_deg * kDegree;
  g.alpha_half_width = alpha_half_width_deg * kDegree;
  return g;
}

OptimizerConfig PipelineConfig::optimizer_config() const {
  return OptimizerConfig{step0_deg * kDegree, shrink, max_iters, tol_deg * kDegree, fd_step_deg * kDegree};
}

RetryPolicy PipelineConfig::retry_policy() const {
  RetryPolicy p;
  p.transport_retries = retries;
  p.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000.0));
  return p;
}

void PipelineConfig::validate() const {
  require(raster_width >= 16 && raster_width <= 4096, "raster.width", raster_width, "16..4096");
  require(raster_height >= 16 && raster_height <= 4096, "raster.height", raster_height, "16..4096");
  require(window.x_max > window.x_min && window.y_max > window.y_min, "raster.window",
          std::vector<double>{window.x_min, window.y_min, window.x_max, window.y_max}, "positive area");
  require(sigma > 0.0 && sigma <= 1.0, "render.sigma", sigma, "(0, 1]");
  require(scales.size() >= 2, "render.scales", scales, "at least two");
  for (std::size_t k = 0; k < scales.size(); ++k) {
    require(scales[k] >= 1 && (k == 0 || scales[k] > scales[k - 1]), "render.scales", scales,
            "positive, strictly increasing");
  }
  require(object_length > 0.0, "render.object_length", object_length, "> 0");
  require(light_distance > object_length, "render.light_distance", light_distance, "> object_length");
  // Four elevations times twelve azimuths keep every run at 48 starts.
  require(elevations_deg.size() == 4, "grid.elevations_deg", elevations_deg, "exactly four values");
  for (double e : elevations_deg) {
    require(e - phi_half_width_deg > 0.0 && e + phi_half_width_deg < 90.0, "grid.elevations_deg", elevations_deg,
            "every elevation +- phi_half_width inside (0, 90)");
  }
  require(theta_half_width_deg >= 0.0 && theta_half_width_deg <= 15.0, "grid.theta_half_width_deg",
          theta_half_width_deg, "0..15");
  require(phi_half_width_deg >= 0.0, "grid.phi_half_width_deg", phi_half_width_deg, ">= 0");
  require(alpha_half_width_deg >= 0.0 && alpha_half_width_deg <= 180.0, "grid.alpha_half_width_deg",
          alpha_half_width_deg, "0..180");
  require(step0_deg > 0.0, "optimizer.step0_deg", step0_deg, "> 0");
  require(shrink > 0.0 && shrink < 1.0, "optimizer.shrink", shrink, "(0, 1)");
  require(max_iters >= 0 && max_iters <= 10000, "optimizer.max_iters", max_iters, "0..10000");
  require(tol_deg > 0.0, "optimizer.tol_deg", tol_deg, "> 0");
  require(fd_step_deg > 0.0, "optimizer.fd_step_deg", fd_step_deg, "> 0");
  require(min_area_frac >= 0.0 && min_area_frac < 1.0, "contour.min_area_frac", min_area_frac, "[0, 1)");
  require(stroke_px >= 1 && stroke_px <= 64, "contour.stroke_px", stroke_px, "1..64");
  require(dilate_px >= 0 && dilate_px <= 256, "contour.dilate_px", dilate_px, "0..256");
  if (band_px) require(*band_px >= 1, "contour.band_px", *band_px, ">= 1");
  require(timeout_s > 0.0, "services.timeout_s", timeout_s, "> 0");
  require(retries >= 0 && retries <= 10, "services.retries", retries, "0..10");
  require(concurrency >= 1 && concurrency <= 256, "services.concurrency", concurrency, "1..256");
  require(top_k >= 1, "ranking.top_k", top_k, ">= 1");
  require(!output_dir.empty(), "output.dir", output_dir, "non-empty");
  if (!run_id.empty()) {
    require(std::regex_match(run_id, std::regex(R"(^[A-Za-z0-9._-]+$)")) && run_id != "." && run_id != "..",
            "output.run_id", run_id, "letters, digits, '.', '_', '-'");
  }

  switch (mode) {
    case RunMode::kStatic:
      if (mesh.empty()) config_error("static mode needs a mesh");
      break;
    case RunMode::kAnimated:
      if (keyframes.size() != 5) config_error("animated mode needs exactly 5 keyframes, got " + std::to_string(keyframes.size()));
      break;
    case RunMode::kDataset:
      if (drawing_dir.empty()) config_error("dataset mode needs drawing_dir");
      break;
  }
  for (Service s : {Service::kPropose, Service::kGenerate, Service::kVerify, Service::kScore}) {
    const std::string& url = endpoints.url(s);
    if (!url.empty() && !is_absolute_url(url)) {
      config_error("services.endpoints." + std::string(service_name(s)) + " must be an absolute URL, got '" + url + "'");
    }
  }
}

void PipelineConfig::validate_services() const {
  validate();
  if (mock) return;
  for (Service s : {Service::kPropose, Service::kGenerate, Service::kVerify, Service::kScore}) {
    if (endpoints.url(s).empty()) {
      config_error("services.endpoints." + std::string(service_name(s)) + " is required unless mock is set");
    }
  }
}

nlohmann::json to_json(const PipelineConfig& c) {
  return json{
      {"schema_version", kConfigSchemaVersion},
      {"mode", run_mode_name(c.mode)},
      {"mesh", c.mesh},
      {"keyframes", c.keyframes},
      {"drawing_dir", c.drawing_dir},
      {"raster",
       {{"width", c.raster_width},
        {"height", c.raster_height},
        {"window", {c.window.x_min, c.window.y_min, c.window.x_max, c.window.y_max}}}},
      {"render",
       {{"sigma", c.sigma}, {"scales", c.scales}, {"object_length", c.object_length}, {"light_distance", c.light_distance}}},
      {"grid",
       {{"seed", c.seed},
        {"elevations_deg", c.elevations_deg},
        {"theta_half_width_deg", c.theta_half_width_deg},
        {"phi_half_width_deg", c.phi_half_width_deg},
        {"alpha_half_width_deg", c.alpha_half_width_deg}}},
      {"optimizer",
       {{"step0_deg", c.step0_deg},
        {"shrink", c.shrink},
        {"max_iters", c.max_iters},
        {"tol_deg", c.tol_deg},
        {"fd_step_deg", c.fd_step_deg},
        {"workers", c.workers}}},
      {"contour",
       {{"min_area_frac", c.min_area_frac},
        {"stroke_px", c.stroke_px},
        {"dilate_px", c.dilate_px},
        {"band_px", c.band_px ? json(*c.band_px) : json(nullptr)}}},
      {"services",
       {{"endpoints",
         {{"propose", c.endpoints.propose},
          {"generate", c.endpoints.generate},
          {"verify", c.endpoints.verify},
          {"score", c.endpoints.score}}},
        {"mock", c.mock},
        {"timeout_s", c.timeout_s},
        {"retries", c.retries},
        {"concurrency", c.concurrency},
        {"verify_test_header", c.verify_test_header}}},
      {"ranking", {{"top_k", c.top_k}, {"subject_override", c.subject_override ? json(*c.subject_override) : json(nullptr)}}},
      {"output", {{"dir", c.output_dir}, {"run_id", c.run_id}}},
  };
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  Section root(j, "config");
  int version = kConfigSchemaVersion;
  root.get("schema_version", version);
  if (version != kConfigSchemaVersion) config_error("unsupported schema_version " + std::to_string(version));
  std::string mode(run_mode_name(c.mode));
  root.get("mode", mode);
  c.mode = parse_mode(mode);
  root.get("mesh", c.mesh);
  root.get("keyframes", c.keyframes);
  root.get("drawing_dir", c.drawing_dir);

  if (const json* r = root.child("raster")) {
    Section s(*r, "raster");
    s.get("width", c.raster_width);
    s.get("height", c.raster_height);
    std::vector<double> w{c.window.x_min, c.window.y_min, c.window.x_max, c.window.y_max};
    s.get("window", w);
    if (w.size() != 4) config_error("raster.window needs [x_min, y_min, x_max, y_max]");
    c.window = Window{w[0], w[1], w[2], w[3]};
  }
  if (const json* r = root.child("render")) {
    Section s(*r, "render");
    s.get("sigma", c.sigma);
    s.get("scales", c.scales);
    s.get("object_length", c.object_length);
    s.get("light_distance", c.light_distance);
  }
  if (const json* r = root.child("grid")) {
    Section s(*r, "grid");
    s.get("seed", c.seed);
    s.get("elevations_deg", c.elevations_deg);
    s.get("theta_half_width_deg", c.theta_half_width_deg);
    s.get("phi_half_width_deg", c.phi_half_width_deg);
    s.get("alpha_half_width_deg", c.alpha_half_width_deg);
  }
  if (const json* r = root.child("optimizer")) {
    Section s(*r, "optimizer");
    s.get("step0_deg", c.step0_deg);
    s.get("shrink", c.shrink);
    s.get("max_iters", c.max_iters);
    s.get("tol_deg", c.tol_deg);
    s.get("fd_step_deg", c.fd_step_deg);
    s.get("workers", c.workers);
  }
  if (const json* r = root.child("contour")) {
    Section s(*r, "contour");
    s.get("min_area_frac", c.min_area_frac);
    s.get("stroke_px", c.stroke_px);
    s.get("dilate_px", c.dilate_px);
    s.get_optional("band_px", c.band_px);
  }
  if (const json* r = root.child("services")) {
    Section s(*r, "services");
    if (const json* e = s.child("endpoints")) {
      Section es(*e, "services.endpoints");
      es.get("propose", c.endpoints.propose);
      es.get("generate", c.endpoints.generate);
      es.get("verify", c.endpoints.verify);
      es.get("score", c.endpoints.score);
    }
    s.get("mock", c.mock);
    s.get("timeout_s", c.timeout_s);
    s.get("retries", c.retries);
    s.get("concurrency", c.concurrency);
    s.get("verify_test_header", c.verify_test_header);
  }
  if (const json* r = root.child("ranking")) {
    Section s(*r, "ranking");
    s.get("top_k", c.top_k);
    s.get_optional("subject_override", c.subject_override);
  }
  if (const json* r = root.child("output")) {
    Section s(*r, "output");
    s.get("dir", c.output_dir);
    s.get("run_id", c.run_id);
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) config_error(path.string() + " is not valid JSON");
  return config_from_json(j);
}

nlohmann::json config_snapshot(const PipelineConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output");
  j["optimizer"].erase("workers");
  if (cfg.mock) j["services"]["endpoints"] = "mock";
  return j;
}

}  // namespace shadowcast
