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

#include "ginn/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ginn/error.h"
#include "ginn/parallel.h"

namespace ginn {

void FrameSpec::Validate() const {
  if (resolution < 64) throw Error(ErrorCode::kInvalidArgument, "frame resolution must be >= 64");
  if (!(line_width >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "line width must be >= 1");
  if (palette.empty()) throw Error(ErrorCode::kInvalidArgument, "palette is empty");
}

double LogProbToIntensity(double log_prob_white) {
  const double clamped = std::clamp(log_prob_white, kLogProbFloor, 0.0);
  return (clamped - kLogProbFloor) / -kLogProbFloor;
}

Heatmap heatmap(const NetworkParams& params, int resolution, BackgroundMode mode) {
  if (resolution < 1) throw Error(ErrorCode::kInvalidArgument, "heatmap resolution must be >= 1");
  Heatmap out{resolution, std::vector<double>(static_cast<std::size_t>(resolution) * resolution)};
  NetworkEvaluator eval(params);
  for (int y = 0; y < resolution; ++y) {
    for (int x = 0; x < resolution; ++x) {
      const Point p{(x + 0.5) / resolution, (y + 0.5) / resolution};
      const double lp = eval.Run(p).log_prob_white();
      out.intensity[static_cast<std::size_t>(y) * resolution + x] =
          mode == BackgroundMode::kProbabilityWhite ? std::exp(lp) : LogProbToIntensity(lp);
    }
  }
  return out;
}

Heatmap target_heatmap(const TargetImage& target, int resolution) {
  Heatmap out{resolution, std::vector<double>(static_cast<std::size_t>(resolution) * resolution)};
  for (int y = 0; y < resolution; ++y) {
    const int row = std::min(target.height() - 1, y * target.height() / resolution);
    for (int x = 0; x < resolution; ++x) {
      const int col = std::min(target.width() - 1, x * target.width() / resolution);
      out.intensity[static_cast<std::size_t>(y) * resolution + x] =
          target.label(col, row) == Label::kWhite ? 1.0 : 0.0;
    }
  }
  return out;
}

namespace {

std::uint8_t ToByte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

// Coverage of one output pixel by a thick segment: 1 inside the half width,
// falling linearly to 0 over one pixel at the rim.
void RasterizeSegment(Point a, Point b, double half_width, int res,
                      std::vector<float>& coverage) {
  const double reach = half_width + 0.5;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - reach)));
  const int x1 = std::min(res - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + reach)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - reach)));
  const int y1 = std::min(res - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + reach)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double d = PointSegmentDistance({x + 0.5, y + 0.5}, a, b);
      const double c = std::clamp(reach - d, 0.0, 1.0);
      float& slot = coverage[static_cast<std::size_t>(y) * res + x];
      slot = std::max(slot, static_cast<float>(c));
    }
  }
}

}  // namespace

RgbaImage compose_frame(const Heatmap& background, const BoundarySet& boundaries,
                        const FrameSpec& spec) {
  spec.Validate();
  const int res = spec.resolution;
  RgbaImage image(res, res);
  for (int y = 0; y < res; ++y) {
    const int sy = std::min(background.resolution - 1, y * background.resolution / res);
    for (int x = 0; x < res; ++x) {
      const int sx = std::min(background.resolution - 1, x * background.resolution / res);
      const std::uint8_t g = ToByte(background.at(sx, sy));
      std::uint8_t* px = image.at(x, y);
      px[0] = px[1] = px[2] = g;
      px[3] = 255;
    }
  }

  const double half_width = spec.line_width / 2.0;
  std::vector<float> coverage(static_cast<std::size_t>(res) * res);
  for (int layer = 1; layer <= boundaries.hidden_layers; ++layer) {
    std::fill(coverage.begin(), coverage.end(), 0.0f);
    bool any = false;
    for (int n = 0; n < boundaries.hidden_width; ++n) {
      for (const Polyline& line : boundaries.at(layer, n).polylines) {
        for (std::size_t k = 0; k + 1 < line.size(); ++k) {
          RasterizeSegment(res * line[k], res * line[k + 1], half_width, res, coverage);
          any = true;
        }
      }
    }
    if (!any) continue;
    const Rgb color = spec.palette[std::min<std::size_t>(layer - 1, spec.palette.size() - 1)];
    for (std::size_t k = 0; k < coverage.size(); ++k) {
      const double alpha = coverage[k];
      if (alpha <= 0.0) continue;
      std::uint8_t* px = image.pixels.data() + k * 4;
      for (int c = 0; c < 3; ++c) {
        px[c] = static_cast<std::uint8_t>(
            std::lround((1.0 - alpha) * px[c] + alpha * color[c]));
      }
    }
  }
  return image;
}

std::string FrameFileName(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06zu.png", index);
  return name;
}

std::vector<std::filesystem::path> render_run(const RunRecord& run,
                                              const GridSpec& grid,
                                              const FrameSpec& spec,
                                              const std::filesystem::path& out_dir) {
  spec.Validate();
  grid.Validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + out_dir.string());
  }

  std::vector<std::filesystem::path> paths;
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    paths.push_back(out_dir / FrameFileName(k + 1));
  }
  ParallelFor(run.snapshots.size(), [&](std::size_t k) {
    const NetworkParams& params = run.snapshots[k].params;
    const Heatmap bg = spec.background == BackgroundMode::kTarget
                           ? target_heatmap(run.target, spec.resolution)
                           : heatmap(params, spec.resolution, spec.background);
    const RgbaImage frame = compose_frame(bg, extract_all_boundaries(params, grid), spec);
    WriteFileBytes(paths[k], EncodePng(frame));
  });
  return paths;
}

}  // namespace ginn
