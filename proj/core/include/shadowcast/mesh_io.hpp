// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "shadowcast/geometry.hpp"

namespace shadowcast {

// Wavefront OBJ reader. Only `v` and `f` records are interpreted; faces with
// more than three corners are fan-split as (v0, v1, v2), (v0, v2, v3), ...
Mesh parse_obj(std::istream& in, const std::string& source_name = "<stream>");
Mesh load_mesh(const std::filesystem::path& path);

void write_obj(std::ostream& out, const Mesh& mesh);

}  // namespace shadowcast
