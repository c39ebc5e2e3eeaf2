// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "shadowcast/services.hpp"

namespace shadowcast {

/// Header that steers the mock verifier; the value "force:no" makes it answer no.
inline constexpr std::string_view kMockTestHeader = "X-Shadowcast-Test";

// Deterministic stand-ins for the four external services. Every reply is a pure
// function of (seed, request), so runs against the mock are fully reproducible.
class MockBackend {
 public:
  explicit MockBackend(std::uint64_t seed = 0) : seed_(seed) {}

  nlohmann::json propose(const nlohmann::json& request) const;
  /// Returns the contour strokes plus seeded decorative strokes, none of which
  /// fall inside the keep-out mask.
  nlohmann::json generate(const nlohmann::json& request) const;
  nlohmann::json verify(const nlohmann::json& request, const std::string& test_header = {}) const;
  /// Scores grow with the amount of ink, so a drawing scores at least as well
  /// as the same drawing with strokes removed up to a small hashed jitter.
  nlohmann::json score(const nlohmann::json& request) const;

  nlohmann::json handle(Service service, const nlohmann::json& request, const std::string& test_header = {}) const;

 private:
  std::uint64_t seed_;
};

/// In-process transport that calls a MockBackend directly.
class MockTransport : public ServiceTransport {
 public:
  explicit MockTransport(std::uint64_t seed = 0, std::string test_header = {})
      : backend_(seed), test_header_(std::move(test_header)) {}
  nlohmann::json post(Service service, const nlohmann::json& body) override;

 private:
  MockBackend backend_;
  std::string test_header_;
};

/// MockBackend behind a local HTTP server on 127.0.0.1. Port 0 binds any free
/// port; an occupied fixed port throws PortInUse.
class MockServer {
 public:
  MockServer(std::uint64_t seed, int port = 0);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  int port() const;
  std::string base_url() const;
  /// Blocks until stop() is called from another thread or a signal handler.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace shadowcast
