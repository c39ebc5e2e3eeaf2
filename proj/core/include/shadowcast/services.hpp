// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "shadowcast/contour.hpp"
#include "shadowcast/encoding.hpp"
#include "shadowcast/ranking.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

// Wire protocol (JSON over HTTP POST):
//   /propose  {contour_png_b64, system_prompt, subject_override?} -> {reply_text}
//   /generate {contour_png_b64, prompt, keepout_png_b64, seed}   -> {drawing_png_b64}
//   /verify   {image_png_b64, question}                          -> {answer}
//   /score    {image_png_b64, text}                              -> {clip, ir, hps}
enum class Service { kPropose, kGenerate, kVerify, kScore };

std::string_view service_path(Service service);
std::string_view service_name(Service service);

using HeaderMap = std::map<std::string, std::string>;

class ServiceTransport {
 public:
  virtual ~ServiceTransport() = default;
  /// Sends one request. Throws ServiceError on transport failure, non-200
  /// status, or a body that is not JSON; retries are the transport's concern.
  virtual nlohmann::json post(Service service, const nlohmann::json& body) = 0;
};

struct Endpoints {
  std::string propose;
  std::string generate;
  std::string verify;
  std::string score;

  const std::string& url(Service service) const;
  static Endpoints all(const std::string& base_url);
};

struct RetryPolicy {
  int transport_retries = 2;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::milliseconds timeout{120'000};
};

class HttpTransport : public ServiceTransport {
 public:
  HttpTransport(Endpoints endpoints, RetryPolicy policy = {});

  nlohmann::json post(Service service, const nlohmann::json& body) override;

  /// Extra headers sent with every request to one service.
  void set_headers(Service service, HeaderMap headers);

 private:
  Endpoints endpoints_;
  RetryPolicy policy_;
  std::map<Service, HeaderMap> headers_;
};

/// A reply that breaks the expected format is retried once before failing.
inline constexpr int kFormatAttempts = 2;

PromptProposal propose_prompt(ServiceTransport& transport, const Bytes& contour_png,
                              const std::optional<std::string>& subject_override);

/// Requests a drawing and verifies the keep-out contract (MaskViolation).
GrayImage generate_drawing(ServiceTransport& transport, const BinaryRaster& contour_image,
                           const std::string& prompt, const KeepoutMask& keepout, std::uint64_t seed);

/// Asks whether the red-highlighted contour outlines the component.
bool vqa_gate(ServiceTransport& transport, const GrayImage& drawing_full, const ContourSet& contours,
              const std::string& component, int stroke_px = kDefaultStrokePx);

ScoreBundle score_image(ServiceTransport& transport, const GrayImage& image, const std::string& text);

}  // namespace shadowcast
