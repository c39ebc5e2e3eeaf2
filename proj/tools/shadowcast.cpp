// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <pthread.h>

#include <csignal>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "shadowcast/config.hpp"
#include "shadowcast/error.hpp"
#include "shadowcast/mock_services.hpp"
#include "shadowcast/pipeline.hpp"
#include "shadowcast/services.hpp"

namespace sc = shadowcast;

namespace {

struct Overrides {
  std::string config;
  std::string mesh;
  std::vector<std::string> keyframes;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> k;
  std::string subject;
  std::string run_id;
  std::optional<unsigned> workers;
  sc::Endpoints endpoints;
  bool mock = false;

  void attach(CLI::App& app, bool services, bool animated) {
    app.add_option("--config", config, "JSON configuration file")->check(CLI::ExistingFile);
    if (animated) {
      app.add_option("--keyframe", keyframes, "keyframe mesh (give exactly five)")->check(CLI::ExistingFile);
    } else {
      app.add_option("--mesh", mesh, "OBJ mesh")->check(CLI::ExistingFile);
    }
    app.add_option("--seed", seed, "grid and generation seed");
    app.add_option("--out", out, "output directory (default: out)");
    app.add_option("--run-id", run_id, "run directory name (default: configuration digest)");
    app.add_option("--workers", workers, "optimizer threads (0 = all cores)");
    if (!services) return;
    app.add_option("--k", k, "number of top-ranked compositions to report")->check(CLI::PositiveNumber);
    app.add_option("--subject", subject, "required drawing subject");
    app.add_option("--endpoint.propose", endpoints.propose, "prompt proposal service URL");
    app.add_option("--endpoint.generate", endpoints.generate, "drawing generation service URL");
    app.add_option("--endpoint.verify", endpoints.verify, "coherence check service URL");
    app.add_option("--endpoint.score", endpoints.score, "scoring service URL");
    app.add_flag("--mock", mock, "serve deterministic mock services on a local port");
  }

  sc::PipelineConfig resolve(sc::RunMode mode) const {
    sc::PipelineConfig cfg = config.empty() ? sc::PipelineConfig{} : sc::load_config(config);
    cfg.mode = mode;
    if (!mesh.empty()) cfg.mesh = mesh;
    if (!keyframes.empty()) cfg.keyframes = keyframes;
    if (seed) cfg.seed = *seed;
    if (!out.empty()) cfg.output_dir = out;
    if (!run_id.empty()) cfg.run_id = run_id;
    if (workers) cfg.workers = *workers;
    if (k) cfg.top_k = *k;
    if (!subject.empty()) cfg.subject_override = subject;
    if (!endpoints.propose.empty()) cfg.endpoints.propose = endpoints.propose;
    if (!endpoints.generate.empty()) cfg.endpoints.generate = endpoints.generate;
    if (!endpoints.verify.empty()) cfg.endpoints.verify = endpoints.verify;
    if (!endpoints.score.empty()) cfg.endpoints.score = endpoints.score;
    if (mock) cfg.mock = true;
    return cfg;
  }
};

int exit_code_for(const sc::Error& e) {
  switch (e.code()) {
    case sc::ErrorCode::kServiceError:
      return sc::kExitServiceFailure;
    case sc::ErrorCode::kPortInUse:
    case sc::ErrorCode::kIoError:
      return 1;
    default:
      return sc::kExitConfigError;
  }
}

void report(const sc::RunOutcome& outcome) {
  for (const auto& w : outcome.manifest.value("warnings", nlohmann::json::array())) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  std::cout << outcome.run_dir.string() << "\n";
}

// Runs a service-backed mode against real endpoints or a local mock server.
int run_with_services(const sc::PipelineConfig& cfg, bool animated) {
  cfg.validate_services();
  std::unique_ptr<sc::MockServer> server;
  sc::Endpoints endpoints = cfg.endpoints;
  if (cfg.mock) {
    server = std::make_unique<sc::MockServer>(cfg.seed);
    endpoints = sc::Endpoints::all(server->base_url());
  }
  sc::HttpTransport transport(endpoints, cfg.retry_policy());
  if (!cfg.verify_test_header.empty()) {
    transport.set_headers(sc::Service::kVerify, {{std::string(sc::kMockTestHeader), cfg.verify_test_header}});
  }
  const sc::RunOutcome outcome = animated ? sc::run_animated(cfg, transport) : sc::run_pipeline(cfg, transport);
  report(outcome);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shadow-conditioned line drawing pipeline"};
  app.set_version_flag("--version", std::string(sc::engine_version()));
  app.require_subcommand(1);

  Overrides opt_o, gen_o, anim_o;
  auto* optimize = app.add_subcommand("optimize", "grid initialisation and fractal-dimension ascent only");
  opt_o.attach(*optimize, false, false);
  auto* generate = app.add_subcommand("generate", "full static pipeline");
  gen_o.attach(*generate, true, false);
  auto* animate = app.add_subcommand("animate", "animated pipeline over five keyframes");
  anim_o.attach(*animate, true, true);

  auto* dataset = app.add_subcommand("dataset", "build contour/drawing training pairs");
  std::string drawings, dataset_out = "dataset";
  int stroke_px = 1;
  std::size_t regions = 4;
  dataset->add_option("--drawings", drawings, "directory of line-drawing PNGs")->required()->check(CLI::ExistingDirectory);
  dataset->add_option("--out", dataset_out, "output directory");
  dataset->add_option("--stroke-px", stroke_px, "contour stroke width")->check(CLI::Range(1, 64));
  dataset->add_option("--regions", regions, "merge target region count")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("mock-serve", "serve deterministic mock services");
  std::uint64_t serve_seed = 0;
  int serve_port = 8080;
  serve->add_option("--seed", serve_seed, "mock seed");
  serve->add_option("--port", serve_port, "TCP port (0 = any free port)")->check(CLI::Range(0, 65535));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other usage error is a config error.
    const int rc = app.exit(e);
    return rc == 0 ? sc::kExitOk : sc::kExitConfigError;
  }

  try {
    if (*optimize) {
      const sc::RunOutcome outcome = sc::run_optimize(opt_o.resolve(sc::RunMode::kStatic));
      report(outcome);
      return outcome.exit_code;
    }
    if (*generate) return run_with_services(gen_o.resolve(sc::RunMode::kStatic), false);
    if (*animate) return run_with_services(anim_o.resolve(sc::RunMode::kAnimated), true);
    if (*dataset) {
      const sc::DatasetReport r = sc::run_dataset(drawings, dataset_out, stroke_px, regions);
      std::cout << r.drawings << " drawings, " << r.pairs << " pairs, " << r.skipped.size() << " skipped\n";
      return sc::kExitOk;
    }
    if (*serve) {
      // Server threads inherit the blocked mask; the main thread waits for the signal.
      sigset_t signals;
      sigemptyset(&signals);
      sigaddset(&signals, SIGINT);
      sigaddset(&signals, SIGTERM);
      pthread_sigmask(SIG_BLOCK, &signals, nullptr);
      sc::MockServer server(serve_seed, serve_port);
      std::cout << server.base_url() << std::endl;
      int received = 0;
      sigwait(&signals, &received);
      server.stop();
      return sc::kExitOk;
    }
  } catch (const sc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return sc::kExitOk;
}
