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

#ifndef GINN_DATA_H_
#define GINN_DATA_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ginn/geometry_types.h"
#include "ginn/image_io.h"
#include "ginn/net.h"
#include "ginn/rng.h"

namespace ginn {

enum class TargetSource { kFile, kProcedural };

// Binary-labeled pixel grid: the entire data domain and its supervision.
// Immutable once built; always at least 8x8 with both classes present.
class TargetImage {
 public:
  static constexpr int kMinSize = 8;

  // Throws kInvalidArgument on bad dimensions and kDegenerateTarget when only
  // one class is present. `labels` is row-major, row 0 at the top.
  static TargetImage FromLabels(int width, int height, std::vector<Label> labels,
                                TargetSource source);

  int width() const { return width_; }
  int height() const { return height_; }
  TargetSource source() const { return source_; }
  std::size_t pixel_count() const { return labels_.size(); }

  Label label(int column, int row) const {
    return labels_[static_cast<std::size_t>(row) * width_ + column];
  }
  const std::vector<Label>& labels() const { return labels_; }

  // Every pixel center with its label, in row-major order.
  std::vector<LabeledPoint> AllPixels() const;

  friend bool operator==(const TargetImage&, const TargetImage&) = default;

 private:
  TargetImage(int width, int height, std::vector<Label> labels, TargetSource source)
      : width_(width), height_(height), labels_(std::move(labels)), source_(source) {}

  int width_;
  int height_;
  std::vector<Label> labels_;
  TargetSource source_;
};

// Pixel is white iff luminance / 255 >= threshold. RGB is reduced with
// Rec. 601 luma weights; alpha is ignored. Throws kDecode for bytes that do
// not decode, kDegenerateTarget when only one class results.
TargetImage load_target(std::span<const std::uint8_t> image_bytes,
                        double threshold = 0.5);
TargetImage target_from_image(const RgbaImage& image, double threshold = 0.5);

// Left-right symmetric bottle silhouette (black) on a white background, with a
// white diamond centered in the image. Requires width, height >= 32.
TargetImage procedural_bottle(int width, int height);

// Black/white rendering of the labels for inspection.
RgbaImage target_to_image(const TargetImage& target);

// Pixel-center coordinates ((i+0.5)/width, (j+0.5)/height).
Point pixel_to_coord(int column, int row, const TargetImage& target);

using Batch = std::vector<LabeledPoint>;

// Uniform i.i.d. pixel draws with replacement. Advances `rng`.
Batch sample_batch(const TargetImage& target, Rng& rng, int batch_size);

}  // namespace ginn

#endif  // GINN_DATA_H_
