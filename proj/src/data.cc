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

#include "ginn/data.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ginn/error.h"

namespace ginn {

TargetImage TargetImage::FromLabels(int width, int height,
                                    std::vector<Label> labels,
                                    TargetSource source) {
  if (width < kMinSize || height < kMinSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "target must be at least 8x8, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  if (labels.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kShapeMismatch, "label grid does not match dimensions");
  }
  const bool has_white = std::find(labels.begin(), labels.end(), Label::kWhite) != labels.end();
  const bool has_black = std::find(labels.begin(), labels.end(), Label::kBlack) != labels.end();
  if (!has_white || !has_black) {
    throw Error(ErrorCode::kDegenerateTarget, "degenerate target");
  }
  return TargetImage(width, height, std::move(labels), source);
}

std::vector<LabeledPoint> TargetImage::AllPixels() const {
  std::vector<LabeledPoint> out;
  out.reserve(labels_.size());
  for (int j = 0; j < height_; ++j) {
    for (int i = 0; i < width_; ++i) {
      out.push_back({pixel_to_coord(i, j, *this), label(i, j)});
    }
  }
  return out;
}

TargetImage target_from_image(const RgbaImage& image, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be in (0, 1)");
  }
  std::vector<Label> labels(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* px = image.at(x, y);
      const double luma = (299.0 * px[0] + 587.0 * px[1] + 114.0 * px[2]) / 1000.0;
      labels[static_cast<std::size_t>(y) * image.width + x] =
          luma / 255.0 >= threshold ? Label::kWhite : Label::kBlack;
    }
  }
  return TargetImage::FromLabels(image.width, image.height, std::move(labels),
                                 TargetSource::kFile);
}

TargetImage load_target(std::span<const std::uint8_t> image_bytes,
                        double threshold) {
  return target_from_image(DecodePng(image_bytes), threshold);
}

TargetImage procedural_bottle(int width, int height) {
  if (width < 32 || height < 32) {
    throw Error(ErrorCode::kInvalidArgument,
                "procedural target must be at least 32x32");
  }
  // Horizontal distance from the midline is computed from the integer
  // |2i + 1 - width| so columns i and width-1-i get bit-identical values.
  auto half_width_at = [](double y) -> double {
    constexpr double kNeckTop = 0.08, kNeckBottom = 0.26;
    constexpr double kShoulderBottom = 0.38, kBodyBottom = 0.92;
    constexpr double kNeck = 0.09, kBody = 0.32;
    if (y < kNeckTop || y > kBodyBottom) return -1.0;
    if (y <= kNeckBottom) return kNeck;
    if (y <= kShoulderBottom) {
      const double t = (y - kNeckBottom) / (kShoulderBottom - kNeckBottom);
      return kNeck + t * (kBody - kNeck);
    }
    return kBody;
  };
  constexpr double kDiamondCenterY = 0.56;
  constexpr double kDiamondHalfWidth = 0.16;
  constexpr double kDiamondHalfHeight = 0.2;

  std::vector<Label> labels(static_cast<std::size_t>(width) * height);
  for (int j = 0; j < height; ++j) {
    const double y = (j + 0.5) / height;
    const double body = half_width_at(y);
    for (int i = 0; i < width; ++i) {
      const double dx = std::abs(2 * i + 1 - width) / (2.0 * width);
      const bool in_body = dx <= body;
      const bool in_diamond = dx / kDiamondHalfWidth +
                                  std::abs(y - kDiamondCenterY) / kDiamondHalfHeight <=
                              1.0;
      labels[static_cast<std::size_t>(j) * width + i] =
          in_body && !in_diamond ? Label::kBlack : Label::kWhite;
    }
  }
  return TargetImage::FromLabels(width, height, std::move(labels),
                                 TargetSource::kProcedural);
}

RgbaImage target_to_image(const TargetImage& target) {
  RgbaImage image(target.width(), target.height());
  for (int j = 0; j < target.height(); ++j) {
    for (int i = 0; i < target.width(); ++i) {
      const std::uint8_t v = target.label(i, j) == Label::kWhite ? 255 : 0;
      std::uint8_t* px = image.at(i, j);
      px[0] = px[1] = px[2] = v;
      px[3] = 255;
    }
  }
  return image;
}

Point pixel_to_coord(int column, int row, const TargetImage& target) {
  if (column < 0 || column >= target.width() || row < 0 || row >= target.height()) {
    throw Error(ErrorCode::kInvalidArgument,
                "pixel (" + std::to_string(column) + ", " + std::to_string(row) +
                    ") outside target");
  }
  return {(column + 0.5) / target.width(), (row + 0.5) / target.height()};
}

Batch sample_batch(const TargetImage& target, Rng& rng, int batch_size) {
  if (batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  }
  Batch batch;
  batch.reserve(static_cast<std::size_t>(batch_size));
  const std::uint64_t n = target.pixel_count();
  for (int k = 0; k < batch_size; ++k) {
    const auto index = rng.uniform_index(n);
    const int column = static_cast<int>(index % target.width());
    const int row = static_cast<int>(index / target.width());
    batch.push_back({pixel_to_coord(column, row, target), target.label(column, row)});
  }
  return batch;
}

}  // namespace ginn
