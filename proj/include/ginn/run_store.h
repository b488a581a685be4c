// Copyright 2026 The GINN Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GINN_RUN_STORE_H_
#define GINN_RUN_STORE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"

#include "ginn/boundary.h"
#include "ginn/metrics.h"
#include "ginn/render.h"
#include "ginn/train.h"

namespace ginn {

using Json = nlohmann::json;

inline constexpr int kBundleFormatVersion = 1;
inline constexpr int kBundleHeatmapResolution = 128;

// Run files (<name>.ginn.json). Doubles are written in shortest round-trip
// form, so LoadRun(SaveRun(r)) == r.
Json RunToJson(const RunRecord& run);
// Throws kMalformed for missing/mistyped fields, kUnsupportedVersion for an
// unknown format version, kShapeMismatch when parameters do not fit the
// recorded network shape.
RunRecord RunFromJson(const Json& json);

void save_run(const RunRecord& run, const std::filesystem::path& path);
// Adds kIo for unreadable files and kMalformed for unparsable text.
RunRecord load_run(const std::filesystem::path& path);

Json ParamsToJson(const NetworkParams& params);
Json TargetToJson(const TargetImage& target);

Json ToJson(const ShiftReport& report);
Json ToJson(const CopycatReport& report);
Json ToJson(const FlipReport& report);
Json ToJson(const SymmetryReport& report);
Json ToJson(const CornerReport& report);

struct BundleSnapshot {
  Snapshot snapshot;
  BoundarySet boundaries;
  std::vector<std::uint8_t> heatmap;  // 128 x 128, row-major
  double accuracy = 0.0;
  std::optional<ShiftReport> shift;   // relative to the previous snapshot
  CopycatReport copycats;
  SymmetryReport symmetry;
  CornerReport corners;
};

// Everything the browser viewer needs, with no reference to other files.
struct ViewerBundle {
  NetworkConfig net_config;
  TrainingConfig train_config;
  SnapshotSchedule schedule;
  bool interrupted = false;
  TargetImage target;
  GridSpec grid;
  std::vector<Rgb> palette;
  std::vector<Point> corners;
  std::vector<BundleSnapshot> snapshots;
};

// 8-bit quantization of LogProbToIntensity: round(255 * intensity).
std::vector<std::uint8_t> QuantizedHeatmap(const NetworkParams& params, int resolution);

// Per-snapshot geometry, heatmaps and metrics; snapshots are processed on
// ParallelFor workers.
ViewerBundle export_bundle(const RunRecord& run, const GridSpec& grid,
                           const FrameSpec& frame_spec);

Json BundleToJson(const ViewerBundle& bundle);

// Structural validation of a bundle document as the viewer loads it. Throws
// kUnsupportedVersion or kMalformed with the offending JSON path.
void ValidateBundleJson(const Json& json);

}  // namespace ginn

#endif  // GINN_RUN_STORE_H_
