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

#include <gtest/gtest.h>
#include <png.h>

#include <algorithm>
#include <cmath>

#include "ginn/error.h"
#include "test_support.h"

namespace ginn {
namespace {

std::vector<std::uint8_t> GrayPng(int width, int height,
                                  const std::vector<std::uint8_t>& gray) {
  std::vector<std::uint8_t> out;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  png_set_write_fn(
      png, &out,
      [](png_structp p, png_bytep data, png_size_t n) {
        auto* v = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
        v->insert(v->end(), data, data + n);
      },
      nullptr);
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(gray.data() + static_cast<std::size_t>(y) * width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

std::size_t CountWhite(const TargetImage& t) {
  return static_cast<std::size_t>(
      std::count(t.labels().begin(), t.labels().end(), Label::kWhite));
}

TEST(LoadTarget, ThresholdsGrayscale) {
  std::vector<std::uint8_t> gray(64);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) gray[y * 8 + x] = x < 4 ? 0 : 255;
  }
  const TargetImage t = load_target(GrayPng(8, 8, gray), 0.5);
  EXPECT_EQ(CountWhite(t), 32u);
  EXPECT_EQ(t.pixel_count() - CountWhite(t), 32u);
  EXPECT_EQ(t.label(0, 0), Label::kBlack);
  EXPECT_EQ(t.label(7, 7), Label::kWhite);
  EXPECT_EQ(t.source(), TargetSource::kFile);
  EXPECT_EQ(load_target(GrayPng(8, 8, gray), 0.5), t);
}

TEST(LoadTarget, RgbUsesLuminanceAndTiesGoWhite) {
  RgbaImage img(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      std::uint8_t* px = img.at(x, y);
      px[3] = 255;
      if (y < 4) {
        px[0] = px[1] = px[2] = 128;  // 128/255 > 0.5
      } else if (y < 6) {
        px[0] = px[1] = px[2] = 127;
      } else {
        px[0] = 255;  // pure red: luma 76.2
      }
    }
  }
  const TargetImage t = load_target(EncodePng(img));
  EXPECT_EQ(t.label(3, 0), Label::kWhite);
  EXPECT_EQ(t.label(3, 5), Label::kBlack);
  EXPECT_EQ(t.label(3, 7), Label::kBlack);
  // Exactly at threshold counts as white.
  const TargetImage at = target_from_image(img, 127.0 / 255.0);
  EXPECT_EQ(at.label(0, 5), Label::kWhite);
}

TEST(LoadTarget, Errors) {
  std::vector<std::uint8_t> white(64, 255);
  try {
    load_target(GrayPng(8, 8, white));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTarget);
    EXPECT_STREQ(e.what(), "degenerate target");
  }
  const std::vector<std::uint8_t> junk = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  try {
    load_target(junk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecode);
  }
  auto truncated = GrayPng(8, 8, white);
  truncated.resize(truncated.size() / 2);
  EXPECT_THROW(load_target(truncated), Error);
  EXPECT_THROW(load_target(GrayPng(4, 4, std::vector<std::uint8_t>(16, 0))), Error);
}

TEST(ProceduralBottle, Fixture64) {
  const TargetImage t = procedural_bottle(64, 64);
  EXPECT_EQ(t.source(), TargetSource::kProcedural);
  EXPECT_GT(CountWhite(t), 0u);
  EXPECT_LT(CountWhite(t), t.pixel_count());
  EXPECT_EQ(t.label(32, 32), Label::kWhite);
  EXPECT_EQ(t.label(31, 31), Label::kWhite);
  // The body around the diamond is black.
  EXPECT_EQ(t.label(32, 16 * 64 / 100 + 30), Label::kWhite);
  EXPECT_EQ(t.label(32 - 16, 40), Label::kBlack);
  EXPECT_EQ(procedural_bottle(64, 64), t);
}

TEST(ProceduralBottle, MirrorSymmetricAtManySizes) {
  for (int w : {32, 33, 50, 64, 97, 128}) {
    for (int h : {32, 41, 64}) {
      const TargetImage t = procedural_bottle(w, h);
      for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
          ASSERT_EQ(t.label(i, j), t.label(w - 1 - i, j)) << w << "x" << h;
        }
      }
    }
  }
  EXPECT_THROW(procedural_bottle(31, 64), Error);
}

TEST(PixelToCoord, PixelCenters) {
  const TargetImage t = procedural_bottle(64, 64);
  EXPECT_EQ(pixel_to_coord(0, 0, t), (Point{0.0078125, 0.0078125}));
  EXPECT_EQ(pixel_to_coord(63, 63, t), (Point{0.9921875, 0.9921875}));
  EXPECT_THROW(pixel_to_coord(64, 0, t), Error);
  EXPECT_THROW(pixel_to_coord(0, -1, t), Error);
}

TEST(PixelToCoord, RoundTripAndStrictInterior) {
  const TargetImage t = procedural_bottle(40, 33);
  const auto pixels = t.AllPixels();
  ASSERT_EQ(pixels.size(), t.pixel_count());
  for (int j = 0; j < t.height(); ++j) {
    for (int i = 0; i < t.width(); ++i) {
      const LabeledPoint& lp = pixels[static_cast<std::size_t>(j) * t.width() + i];
      EXPECT_GT(lp.point.x, 0.0);
      EXPECT_LT(lp.point.x, 1.0);
      EXPECT_GT(lp.point.y, 0.0);
      EXPECT_LT(lp.point.y, 1.0);
      EXPECT_EQ(lp.label, t.label(i, j));
      EXPECT_EQ(static_cast<int>(std::floor(lp.point.x * t.width())), i);
      EXPECT_EQ(static_cast<int>(std::floor(lp.point.y * t.height())), j);
    }
  }
}

TEST(SampleBatch, DeterministicAndLabelled) {
  const TargetImage t = procedural_bottle(64, 64);
  Rng a(9, Rng::Stream::kData);
  Rng b = a;
  const Batch first = sample_batch(t, a, 128);
  EXPECT_EQ(first.size(), 128u);
  const Batch second = sample_batch(t, b, 128);
  for (std::size_t k = 0; k < first.size(); ++k) {
    EXPECT_EQ(first[k].point, second[k].point);
    EXPECT_EQ(first[k].label, second[k].label);
    const int i = static_cast<int>(first[k].point.x * 64);
    const int j = static_cast<int>(first[k].point.y * 64);
    EXPECT_EQ(first[k].point, pixel_to_coord(i, j, t));
    EXPECT_EQ(first[k].label, t.label(i, j));
  }
  EXPECT_TRUE(a == b);
  EXPECT_THROW(sample_batch(t, a, 0), Error);
}

// A target that is black everywhere except one pixel: the sampled labels must
// follow the grid, and the lone white pixel shows up at its 1/N rate.
TEST(SampleBatch, SingleWhitePixel) {
  std::vector<Label> labels(64 * 8, Label::kBlack);
  labels[5] = Label::kWhite;
  const TargetImage t = TargetImage::FromLabels(64, 8, labels, TargetSource::kFile);
  Rng rng(10);
  int white = 0;
  const int n = 51200;
  for (const auto& s : sample_batch(t, rng, n)) {
    const bool is_white_pixel = s.point == pixel_to_coord(5, 0, t);
    EXPECT_EQ(s.label == Label::kWhite, is_white_pixel);
    white += is_white_pixel ? 1 : 0;
  }
  EXPECT_NEAR(white, n / 512.0, 5 * std::sqrt(n / 512.0));
}

TEST(SampleBatch, ChiSquareUniformity) {
  const TargetImage t = procedural_bottle(64, 64);
  Rng rng(2024, Rng::Stream::kData);
  std::vector<int> counts(t.pixel_count(), 0);
  const int draws = 100000;
  for (const auto& s : sample_batch(t, rng, draws)) {
    const int i = static_cast<int>(s.point.x * 64);
    const int j = static_cast<int>(s.point.y * 64);
    ++counts[static_cast<std::size_t>(j) * 64 + i];
  }
  const double expected = static_cast<double>(draws) / counts.size();
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  const double dof = static_cast<double>(counts.size() - 1);
  EXPECT_LT(std::abs(chi2 - dof), 5.0 * std::sqrt(2.0 * dof)) << chi2;
}

TEST(TargetImage, Invariants) {
  EXPECT_THROW(TargetImage::FromLabels(7, 8, std::vector<Label>(56, Label::kWhite),
                                       TargetSource::kFile),
               Error);
  EXPECT_THROW(TargetImage::FromLabels(8, 8, std::vector<Label>(63, Label::kWhite),
                                       TargetSource::kFile),
               Error);
  EXPECT_NO_THROW(testing::HalfPlaneTarget(8, 8));
}

}  // namespace
}  // namespace ginn
