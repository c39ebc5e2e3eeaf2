// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "shadowcast/encoding.hpp"
#include "shadowcast/raster.hpp"

namespace shadowcast {

// 8-bit PNG encoding with fixed compression settings, so equal images always
// produce equal bytes.
Bytes encode_png(const GrayImage& image);
Bytes encode_png(const RgbImage& image);

/// Decodes any 8-bit PNG to grayscale (colour is averaged with integer
/// luma weights, alpha composited over white). The window of the returned
/// spec is the given one.
GrayImage decode_png_gray(std::span<const std::uint8_t> png, const Window& window = Window{});
RgbImage decode_png_rgb(std::span<const std::uint8_t> png, const Window& window = Window{});

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);
void write_file(const std::filesystem::path& path, std::string_view text);
Bytes read_file(const std::filesystem::path& path);

}  // namespace shadowcast
