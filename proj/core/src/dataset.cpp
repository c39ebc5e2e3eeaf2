// Copyright 2026 The Shadowcast Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <iostream>

#include "shadowcast/contour.hpp"
#include "shadowcast/error.hpp"
#include "shadowcast/image_io.hpp"
#include "shadowcast/pipeline.hpp"

namespace shadowcast {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<Bytes> condition_png(const BinaryRaster& region, int stroke_px) {
  try {
    return encode_png(to_gray(render_contours(extract_contours(region, 0.0), stroke_px)));
  } catch (const Error& e) {
    // A region too small to trace (for example a single pixel) has no contour.
    if (e.code() == ErrorCode::kEmptyShadow || e.code() == ErrorCode::kEmptyContourSet) return std::nullopt;
    throw;
  }
}

}  // namespace

DatasetReport run_dataset(const fs::path& drawing_dir, const fs::path& out_dir, int stroke_px, std::size_t regions) {
  if (!fs::is_directory(drawing_dir)) {
    throw Error(ErrorCode::kIoError, "not a directory: " + drawing_dir.string());
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(drawing_dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (entry.is_regular_file() && ext == ".png") inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());

  DatasetReport report;
  json index = json::array();
  fs::create_directories(out_dir);
  for (const auto& path : inputs) {
    const std::string stem = path.stem().string();
    try {
      const GrayImage drawing = decode_png_gray(read_file(path));
      const RegionSet merged = greedy_merge(extract_closed_regions(ink_mask(drawing)), regions);

      std::vector<BinaryRaster> masks;
      for (const auto& r : merged.regions) masks.push_back(region_mask(merged.spec, r));
      if (masks.size() >= 2) {
        BinaryRaster all(merged.spec);
        for (const auto& m : masks) {
          for (std::size_t k = 0; k < m.size(); ++k) all[k] = all[k] | m[k];
        }
        masks.push_back(std::move(all));
      }

      const fs::path dir = out_dir / stem;
      fs::remove_all(dir);
      fs::create_directories(dir);
      write_file(dir / "drawing.png", encode_png(drawing));
      json pairs = json::array();
      for (std::size_t i = 0; i < masks.size(); ++i) {
        const auto png = condition_png(masks[i], stroke_px);
        const bool is_union = masks.size() > merged.regions.size() && i + 1 == masks.size();
        const std::string name = is_union ? "condition_union.png" : "condition_" + std::to_string(i) + ".png";
        if (!png) {
          std::cerr << "dataset: " << path.filename().string() << ": region " << i << " has no traceable contour\n";
          continue;
        }
        write_file(dir / name, *png);
        pairs.push_back(json{{"condition", stem + "/" + name}, {"drawing", stem + "/drawing.png"}});
        ++report.pairs;
      }
      index.push_back(json{{"drawing", path.filename().string()}, {"regions", merged.regions.size()}, {"pairs", pairs}});
      ++report.drawings;
    } catch (const Error& e) {
      std::cerr << "dataset: skipping " << path.filename().string() << ": " << e.what() << "\n";
      report.skipped.push_back(path.filename().string() + ": " + e.what());
    }
  }
  json manifest{{"schema_version", kManifestSchemaVersion},
                {"engine_version", std::string(engine_version())},
                {"stroke_px", stroke_px},
                {"regions", regions},
                {"drawings", index},
                {"skipped", report.skipped}};
  write_file(out_dir / "dataset.json", manifest.dump(2) + "\n");
  return report;
}

}  // namespace shadowcast
