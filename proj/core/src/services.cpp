// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/services.hpp"

#include <regex>
#include <thread>

#include <httplib.h>

#include "shadowcast/compose.hpp"
#include "shadowcast/error.hpp"
#include "shadowcast/image_io.hpp"
#include "shadowcast/prompt.hpp"

namespace shadowcast {
namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path without trailing slash
};

ParsedUrl parse_url(const std::string& url) {
  static const std::regex kUrl(R"(^(https?://[^/\s]+)(/[^\s]*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw Error(ErrorCode::kConfigError, "not an absolute http(s) URL: '" + url + "'");
  std::string prefix = m[2].matched ? m[2].str() : std::string();
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {m[1].str(), prefix};
}

const nlohmann::json& field(const nlohmann::json& reply, const char* name, Service service) {
  if (!reply.is_object() || !reply.contains(name)) {
    throw Error(ErrorCode::kFormatError,
                std::string(service_name(service)) + " reply lacks field '" + name + "'");
  }
  return reply.at(name);
}

std::string string_field(const nlohmann::json& reply, const char* name, Service service) {
  const auto& v = field(reply, name, service);
  if (!v.is_string()) throw Error(ErrorCode::kFormatError, std::string(name) + " is not a string");
  return v.get<std::string>();
}

double number_field(const nlohmann::json& reply, const char* name, Service service) {
  const auto& v = field(reply, name, service);
  if (!v.is_number()) throw Error(ErrorCode::kFormatError, std::string(name) + " is not a number");
  return v.get<double>();
}

std::string png_b64(const GrayImage& image) { return base64_encode(encode_png(image)); }

}  // namespace

std::string_view service_path(Service service) {
  switch (service) {
    case Service::kPropose: return "/propose";
    case Service::kGenerate: return "/generate";
    case Service::kVerify: return "/verify";
    case Service::kScore: return "/score";
  }
  return "/";
}

std::string_view service_name(Service service) { return service_path(service).substr(1); }

const std::string& Endpoints::url(Service service) const {
  switch (service) {
    case Service::kPropose: return propose;
    case Service::kGenerate: return generate;
    case Service::kVerify: return verify;
    case Service::kScore: return score;
  }
  return propose;
}

Endpoints Endpoints::all(const std::string& base_url) { return {base_url, base_url, base_url, base_url}; }

HttpTransport::HttpTransport(Endpoints endpoints, RetryPolicy policy)
    : endpoints_(std::move(endpoints)), policy_(policy) {
  for (Service s : {Service::kPropose, Service::kGenerate, Service::kVerify, Service::kScore}) {
    parse_url(endpoints_.url(s));
  }
}

void HttpTransport::set_headers(Service service, HeaderMap headers) { headers_[service] = std::move(headers); }

nlohmann::json HttpTransport::post(Service service, const nlohmann::json& body) {
  const ParsedUrl url = parse_url(endpoints_.url(service));
  const std::string path = url.prefix + std::string(service_path(service));
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (auto it = headers_.find(service); it != headers_.end()) {
    for (const auto& [k, v] : it->second) headers.emplace(k, v);
  }

  std::string last_error;
  auto backoff = policy_.initial_backoff;
  for (int attempt = 0; attempt <= policy_.transport_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(url.origin);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(policy_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(policy_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    auto reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) {
      last_error = "reply is not JSON";
      continue;
    }
    return reply;
  }
  throw Error(ErrorCode::kServiceError, std::string(service_name(service)) + " at " + url.origin + path + ": " +
                                            last_error + " after " + std::to_string(policy_.transport_retries + 1) +
                                            " attempts");
}

PromptProposal propose_prompt(ServiceTransport& transport, const Bytes& contour_png,
                              const std::optional<std::string>& subject_override) {
  nlohmann::json body{{"contour_png_b64", base64_encode(contour_png)},
                      {"system_prompt", build_system_prompt(subject_override)}};
  if (subject_override) body["subject_override"] = *subject_override;

  std::string last;
  for (int attempt = 0; attempt < kFormatAttempts; ++attempt) {
    try {
      const auto reply = transport.post(Service::kPropose, body);
      return parse_proposal(string_field(reply, "reply_text", Service::kPropose));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kFormatError) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::kFormatError, "proposal reply rejected twice: " + last);
}

GrayImage generate_drawing(ServiceTransport& transport, const BinaryRaster& contour_image, const std::string& prompt,
                           const KeepoutMask& keepout, std::uint64_t seed) {
  require_same_spec(contour_image.spec(), keepout.mask.spec(), "generate_drawing");
  const nlohmann::json body{{"contour_png_b64", png_b64(to_gray(contour_image))},
                            {"prompt", prompt},
                            {"keepout_png_b64", png_b64(to_gray(keepout.mask))},
                            {"seed", seed}};
  const auto reply = transport.post(Service::kGenerate, body);
  const Bytes png = base64_decode(string_field(reply, "drawing_png_b64", Service::kGenerate));
  GrayImage drawing = decode_png_gray(png, contour_image.spec().window());
  require_same_spec(contour_image.spec(), drawing.spec(), "generated drawing");
  check_keepout(drawing, keepout.mask);
  return drawing;
}

bool vqa_gate(ServiceTransport& transport, const GrayImage& drawing_full, const ContourSet& contours,
              const std::string& component, int stroke_px) {
  const nlohmann::json body{{"image_png_b64", base64_encode(encode_png(red_overlay(drawing_full, contours, stroke_px)))},
                            {"question", coherence_question(component)}};
  std::string last;
  for (int attempt = 0; attempt < kFormatAttempts; ++attempt) {
    const auto reply = transport.post(Service::kVerify, body);
    const std::string answer = string_field(reply, "answer", Service::kVerify);
    if (const auto yn = normalize_answer(answer)) return *yn == YesNo::kYes;
    last = answer;
  }
  throw Error(ErrorCode::kFormatError, "verifier answered neither yes nor no: '" + last + "'");
}

ScoreBundle score_image(ServiceTransport& transport, const GrayImage& image, const std::string& text) {
  const nlohmann::json body{{"image_png_b64", png_b64(image)}, {"text", text}};
  const auto reply = transport.post(Service::kScore, body);
  ScoreBundle s{number_field(reply, "clip", Service::kScore), number_field(reply, "ir", Service::kScore),
                number_field(reply, "hps", Service::kScore)};
  if (!(s.clip > 0.0)) throw Error(ErrorCode::kFormatError, "score service returned non-positive clip");
  return s;
}

}  // namespace shadowcast
