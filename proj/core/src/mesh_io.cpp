// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include "shadowcast/mesh_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <vector>

#include "shadowcast/error.hpp"

namespace shadowcast {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError, source + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view tok, const std::string& source, std::size_t line_no) {
  // std::from_chars for double is unavailable on older libstdc++; strtod is fine here.
  std::string buf(tok);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty()) fail(source, line_no, "bad number '" + buf + "'");
  return v;
}

}  // namespace

Mesh parse_obj(std::istream& in, const std::string& source_name) {
  Mesh mesh;
  std::vector<std::vector<long long>> faces;
  std::vector<std::size_t> face_lines;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    const auto tokens = split_ws(view);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4 || tokens.size() > 5) fail(source_name, line_no, "vertex needs 3 coordinates");
      mesh.vertices.emplace_back(parse_double(tokens[1], source_name, line_no),
                                 parse_double(tokens[2], source_name, line_no),
                                 parse_double(tokens[3], source_name, line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) fail(source_name, line_no, "face needs at least 3 corners");
      std::vector<long long> corners;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        // Corner forms: v, v/vt, v//vn, v/vt/vn. Only v matters.
        const std::string_view tok = tokens[k].substr(0, tokens[k].find('/'));
        long long idx = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), idx);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || idx == 0) {
          fail(source_name, line_no, "bad face index '" + std::string(tokens[k]) + "'");
        }
        // Negative indices are relative to the vertices read so far.
        if (idx < 0) idx = static_cast<long long>(mesh.vertices.size()) + idx + 1;
        corners.push_back(idx - 1);
      }
      faces.push_back(std::move(corners));
      face_lines.push_back(line_no);
    }
  }

  const auto vcount = static_cast<long long>(mesh.vertices.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& c = faces[f];
    for (long long idx : c) {
      if (idx < 0 || idx >= vcount) {
        fail(source_name, face_lines[f],
             "face index " + std::to_string(idx + 1) + " out of range (" + std::to_string(vcount) + " vertices)");
      }
    }
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
      mesh.triangles.push_back({static_cast<std::uint32_t>(c[0]), static_cast<std::uint32_t>(c[k]),
                                static_cast<std::uint32_t>(c[k + 1])});
    }
  }
  if (mesh.triangles.empty()) throw Error(ErrorCode::kEmptyMesh, source_name + ": no faces");
  return mesh;
}

Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_obj(in, path.string());
}

void write_obj(std::ostream& out, const Mesh& mesh) {
  out << std::setprecision(17);
  for (const Vec3& v : mesh.vertices) out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

}  // namespace shadowcast
