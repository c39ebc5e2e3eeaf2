// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/image_io.hpp"

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

struct ReadCursor {
  std::span<const std::uint8_t> data;
  std::size_t offset = 0;
};

void write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void read_from_span(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->offset + length > cur->data.size()) png_error(png, "truncated PNG");
  std::memcpy(data, cur->data.data() + cur->offset, length);
  cur->offset += length;
}

// Rows are prepared by the caller; libpng only reads them.
bool encode(int width, int height, int color_type, const std::vector<png_bytep>& rows, Bytes& out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    return false;
  }
  png_set_write_fn(png, &out, write_to_vector, nullptr);
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct Decoded {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgba;  // 4 bytes per pixel
};

bool decode_rgba(std::span<const std::uint8_t> bytes, Decoded& out) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) return false;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  ReadCursor cursor{bytes, 0};
  std::vector<png_bytep> rows;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    return false;
  }
  png_set_read_fn(png, &cursor, read_from_span);
  png_read_info(png, info);
  const auto color = png_get_color_type(png, info);
  png_set_strip_16(png);
  png_set_packing(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
  png_set_filler(png, 0xff, PNG_FILLER_AFTER);
  png_read_update_info(png, info);

  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.rgba.assign(static_cast<std::size_t>(out.width) * out.height * 4, 0);
  rows.resize(static_cast<std::size_t>(out.height));
  for (int y = 0; y < out.height; ++y) rows[y] = out.rgba.data() + static_cast<std::size_t>(y) * out.width * 4;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

Decoded decode_or_throw(std::span<const std::uint8_t> png) {
  Decoded d;
  if (!decode_rgba(png, d)) throw Error(ErrorCode::kFormatError, "payload is not a readable PNG");
  return d;
}

// Alpha composited over white.
std::uint8_t over_white(unsigned v, unsigned a) { return static_cast<std::uint8_t>((v * a + 255u * (255u - a) + 127u) / 255u); }

}  // namespace

Bytes encode_png(const GrayImage& image) {
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  auto* base = const_cast<std::uint8_t*>(image.values().data());
  for (int y = 0; y < image.height(); ++y) rows[y] = base + static_cast<std::size_t>(y) * image.width();
  Bytes out;
  if (!encode(image.width(), image.height(), PNG_COLOR_TYPE_GRAY, rows, out)) {
    throw Error(ErrorCode::kIoError, "PNG encoding failed");
  }
  return out;
}

Bytes encode_png(const RgbImage& image) {
  static_assert(sizeof(Rgb) == 3);
  std::vector<png_bytep> rows(static_cast<std::size_t>(image.height()));
  auto* base = reinterpret_cast<std::uint8_t*>(const_cast<Rgb*>(image.values().data()));
  for (int y = 0; y < image.height(); ++y) rows[y] = base + static_cast<std::size_t>(y) * image.width() * 3;
  Bytes out;
  if (!encode(image.width(), image.height(), PNG_COLOR_TYPE_RGB, rows, out)) {
    throw Error(ErrorCode::kIoError, "PNG encoding failed");
  }
  return out;
}

GrayImage decode_png_gray(std::span<const std::uint8_t> png, const Window& window) {
  const Decoded d = decode_or_throw(png);
  GrayImage out(RasterSpec(d.width, d.height, window));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint8_t* p = &d.rgba[4 * k];
    const unsigned luma = (299u * p[0] + 587u * p[1] + 114u * p[2] + 500u) / 1000u;
    out[k] = over_white(luma, p[3]);
  }
  return out;
}

RgbImage decode_png_rgb(std::span<const std::uint8_t> png, const Window& window) {
  const Decoded d = decode_or_throw(png);
  RgbImage out(RasterSpec(d.width, d.height, window));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint8_t* p = &d.rgba[4 * k];
    out[k] = Rgb{over_white(p[0], p[3]), over_white(p[1], p[3]), over_white(p[2], p[3])};
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace shadowcast
