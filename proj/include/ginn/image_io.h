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

#ifndef GINN_IMAGE_IO_H_
#define GINN_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace ginn {

// 8-bit RGBA raster, row-major, row 0 at the top.
struct RgbaImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 4

  RgbaImage() = default;
  RgbaImage(int width, int height)
      : width(width),
        height(height),
        pixels(static_cast<std::size_t>(width) * height * 4, 0) {}

  std::uint8_t* at(int x, int y) {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 4;
  }

  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;
};

// Decodes any 8-bit (or lower, expanded) PNG into RGBA. 16-bit samples are
// reduced to 8 bits. Throws kDecode on bytes that are not a PNG.
RgbaImage DecodePng(std::span<const std::uint8_t> bytes);

// Encodes RGBA with fixed zlib settings, so equal images give equal bytes.
std::vector<std::uint8_t> EncodePng(const RgbaImage& image);

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace ginn

#endif  // GINN_IMAGE_IO_H_
