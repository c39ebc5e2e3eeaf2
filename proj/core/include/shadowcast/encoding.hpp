// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shadowcast {

using Bytes = std::vector<std::uint8_t>;

std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws FormatError on malformed input.
Bytes base64_decode(std::string_view text);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(std::string_view text);

/// First eight digest bytes as a little-endian integer.
std::uint64_t hash64(std::string_view text);

}  // namespace shadowcast
