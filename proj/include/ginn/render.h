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

#ifndef GINN_RENDER_H_
#define GINN_RENDER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "ginn/boundary.h"
#include "ginn/data.h"
#include "ginn/image_io.h"
#include "ginn/net.h"
#include "ginn/train.h"

namespace ginn {

// Log-probabilities below this are drawn as black.
inline constexpr double kLogProbFloor = -6.907755278982137;  // ln(1e-3)

enum class BackgroundMode { kLogProbWhite, kProbabilityWhite, kTarget };

using Rgb = std::array<std::uint8_t, 3>;

struct FrameSpec {
  int resolution = 512;
  // Layer colors; layers past the end reuse the last entry.
  std::vector<Rgb> palette = {Rgb{0, 0, 255}, Rgb{255, 0, 0}, Rgb{0, 255, 0}};
  double line_width = 2.0;  // output pixels
  BackgroundMode background = BackgroundMode::kLogProbWhite;

  void Validate() const;
};

// Square intensity grid in [0, 1], sampled at output pixel centers.
struct Heatmap {
  int resolution = 0;
  std::vector<double> intensity;  // row-major, row 0 at the top

  double at(int x, int y) const {
    return intensity[static_cast<std::size_t>(y) * resolution + x];
  }
};

// Affine map of log P(white) from [ln 1e-3, 0] onto [0, 1], clamped below.
double LogProbToIntensity(double log_prob_white);

Heatmap heatmap(const NetworkParams& params, int resolution,
                BackgroundMode mode = BackgroundMode::kLogProbWhite);

// Nearest-pixel view of the labels at the given resolution (white = 1).
Heatmap target_heatmap(const TargetImage& target, int resolution);

// Grayscale background with each layer's boundaries blended on top, layer 1
// first. Coverage is max-combined within a layer so overlapping segments of
// one layer never darken each other.
RgbaImage compose_frame(const Heatmap& background, const BoundarySet& boundaries,
                        const FrameSpec& spec);

// Renders every snapshot to out_dir/frame_NNNNNN.png (1-based) and returns
// the paths in snapshot order. Frames are produced on ParallelFor workers.
// Throws kIo naming the file on write failure.
std::vector<std::filesystem::path> render_run(const RunRecord& run,
                                              const GridSpec& grid,
                                              const FrameSpec& spec,
                                              const std::filesystem::path& out_dir);

std::string FrameFileName(std::size_t index);

}  // namespace ginn

#endif  // GINN_RENDER_H_
