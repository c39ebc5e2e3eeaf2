// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/mock_services.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include <httplib.h>

#include "shadowcast/error.hpp"
#include "shadowcast/image_io.hpp"

namespace shadowcast {
namespace {

constexpr std::string_view kDefaultSubject = "fish";

double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

std::string str(const nlohmann::json& request, const char* key) {
  if (!request.contains(key) || !request.at(key).is_string()) {
    throw Error(ErrorCode::kFormatError, std::string("request lacks string field '") + key + "'");
  }
  return request.at(key).get<std::string>();
}

GrayImage decode_field(const nlohmann::json& request, const char* key) {
  return decode_png_gray(base64_decode(str(request, key)));
}

std::size_t ink_pixels(const GrayImage& img) {
  std::size_t n = 0;
  for (auto v : img.values()) n += v < 128;
  return n;
}

// Outline of an axis-aligned ellipse, sampled densely enough to stay 8-connected.
void draw_ellipse(GrayImage& canvas, const BinaryRaster& forbidden, double cx, double cy, double rx, double ry) {
  const int samples = static_cast<int>(std::ceil(8.0 * (rx + ry))) + 16;
  for (int s = 0; s < samples; ++s) {
    const double t = 2.0 * std::numbers::pi * s / samples;
    const int x = static_cast<int>(std::lround(cx + rx * std::cos(t)));
    const int y = static_cast<int>(std::lround(cy + ry * std::sin(t)));
    if (canvas.contains(x, y) && !forbidden.at(x, y)) canvas.at(x, y) = 0;
  }
}

}  // namespace

nlohmann::json MockBackend::propose(const nlohmann::json& request) const {
  str(request, "contour_png_b64");
  str(request, "system_prompt");
  std::string subject(kDefaultSubject);
  if (request.contains("subject_override") && request.at("subject_override").is_string()) {
    subject = request.at("subject_override").get<std::string>();
  }
  const std::string reply =
      "The provided contour shows an outline of the body of a " + subject +
      ". The reason is the contour forms one closed, rounded mass that reads naturally as a torso. Its place on the "
      "canvas leaves open space for the head and limbs around it.\n\n"
      "A minimalist line drawing of a " + subject + " in a playful pose. The " + subject +
      " has a cheerful expression and wears a small scarf. The " + subject +
      " is turning to look over its shoulder. The style is clean and continuous, with confident single-weight strokes.";
  return {{"reply_text", reply}};
}

nlohmann::json MockBackend::generate(const nlohmann::json& request) const {
  const GrayImage contour = decode_field(request, "contour_png_b64");
  const GrayImage keepout = decode_field(request, "keepout_png_b64");
  const std::string prompt = str(request, "prompt");
  if (!request.contains("seed") || !request.at("seed").is_number_unsigned()) {
    throw Error(ErrorCode::kFormatError, "request lacks unsigned field 'seed'");
  }
  const auto seed = request.at("seed").get<std::uint64_t>();
  require_same_spec(contour.spec(), keepout.spec(), "mock generate");

  BinaryRaster forbidden(contour.spec());
  for (std::size_t k = 0; k < forbidden.size(); ++k) forbidden[k] = keepout[k] >= 128;

  // Masked pixels are preserved as blank paper, like an outpainting model would.
  GrayImage drawing(contour.spec(), 255);
  int x_lo = contour.width(), x_hi = -1, y_lo = contour.height(), y_hi = -1;
  for (int y = 0; y < contour.height(); ++y) {
    for (int x = 0; x < contour.width(); ++x) {
      if (contour.at(x, y) < 128) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
      if (!forbidden.at(x, y)) drawing.at(x, y) = 0;
    }
  }
  if (x_hi < 0) {
    x_lo = y_lo = contour.width() / 4;
    x_hi = y_hi = 3 * contour.width() / 4;
  }

  std::mt19937_64 rng(hash64(std::to_string(seed_) + "/generate/" + std::to_string(seed) + "/" + prompt));
  const double cx = 0.5 * (x_lo + x_hi);
  const double cy = 0.5 * (y_lo + y_hi);
  const double span = std::max(8.0, 0.5 * std::max(x_hi - x_lo, y_hi - y_lo));
  // A head, an eye and a couple of limbs around the contour.
  const int count = 3 + static_cast<int>(rng() % 3);
  for (int k = 0; k < count; ++k) {
    const double angle = 2.0 * std::numbers::pi * unit(rng());
    const double dist = span * (0.6 + 0.8 * unit(rng()));
    const double rx = span * (0.12 + 0.25 * unit(rng()));
    const double ry = span * (0.12 + 0.25 * unit(rng()));
    draw_ellipse(drawing, forbidden, cx + dist * std::cos(angle), cy + dist * std::sin(angle), rx, ry);
  }
  return {{"drawing_png_b64", base64_encode(encode_png(drawing))}};
}

nlohmann::json MockBackend::verify(const nlohmann::json& request, const std::string& test_header) const {
  decode_field(request, "image_png_b64");
  str(request, "question");
  if (test_header == "force:no") return {{"answer", "No."}};
  if (test_header == "force:maybe") return {{"answer", "maybe"}};
  return {{"answer", "Yes"}};
}

nlohmann::json MockBackend::score(const nlohmann::json& request) const {
  const std::string b64 = str(request, "image_png_b64");
  const std::string text = str(request, "text");
  const GrayImage image = decode_png_gray(base64_decode(b64));
  const double ink = static_cast<double>(ink_pixels(image));
  const double text_u = unit(hash64(std::to_string(seed_) + "/text/" + text));
  const double image_u = unit(hash64(std::to_string(seed_) + "/image/" + b64 + "/" + text)) - 0.5;
  const double richness = 1.0 - std::exp(-ink / 1500.0);
  return {{"clip", 0.20 + 0.08 * text_u + 0.10 * richness + 0.004 * image_u},
          {"ir", -1.0 + 0.6 * text_u + 1.8 * richness + 0.3 * image_u},
          {"hps", std::clamp(0.15 + 0.05 * text_u + 0.12 * richness + 0.01 * image_u, 0.0, 1.0)}};
}

nlohmann::json MockBackend::handle(Service service, const nlohmann::json& request, const std::string& test_header) const {
  switch (service) {
    case Service::kPropose: return propose(request);
    case Service::kGenerate: return generate(request);
    case Service::kVerify: return verify(request, test_header);
    case Service::kScore: return score(request);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown service");
}

nlohmann::json MockTransport::post(Service service, const nlohmann::json& body) {
  return backend_.handle(service, body, service == Service::kVerify ? test_header_ : std::string());
}

struct MockServer::Impl {
  MockBackend backend;
  httplib::Server server;
  std::thread thread;
  int port = 0;
};

MockServer::MockServer(std::uint64_t seed, int port) : impl_(std::make_unique<Impl>()) {
  impl_->backend = MockBackend(seed);
  for (Service s : {Service::kPropose, Service::kGenerate, Service::kVerify, Service::kScore}) {
    impl_->server.Post(std::string(service_path(s)), [this, s](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        res.status = 400;
        res.set_content(R"({"error":"body is not JSON"})", "application/json");
        return;
      }
      try {
        const auto reply = impl_->backend.handle(s, body, req.get_header_value(std::string(kMockTestHeader)));
        res.set_content(reply.dump(), "application/json");
      } catch (const std::exception& e) {
        res.status = 400;
        res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
      }
    });
  }
  // Without SO_REUSEPORT a second server cannot share an occupied port.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    if (impl_->port <= 0) throw Error(ErrorCode::kPortInUse, "no free local port");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) {
      throw Error(ErrorCode::kPortInUse, "port " + std::to_string(port) + " is already in use");
    }
    impl_->port = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockServer::~MockServer() {
  stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int MockServer::port() const { return impl_->port; }

std::string MockServer::base_url() const { return "http://127.0.0.1:" + std::to_string(impl_->port); }

void MockServer::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void MockServer::stop() { impl_->server.stop(); }

}  // namespace shadowcast
