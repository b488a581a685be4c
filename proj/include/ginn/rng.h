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

#ifndef GINN_RNG_H_
#define GINN_RNG_H_

#include <cstdint>
#include <random>

namespace ginn {

// Seedable generator whose output is identical on every conforming platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not (their algorithms are left to
// the library vendor), so the conversions to doubles, bounded integers and
// normals are implemented here:
//   * uniform01: top 53 bits of one engine draw, scaled by 2^-53.
//   * uniform_index: rejection sampling on the full 64-bit draw.
//   * normal: Box-Muller, one value per call (the sine branch is discarded).
//
// Independent streams are derived from one user seed by mixing a stream tag
// into the seed with SplitMix64 before seeding the engine.
class Rng {
 public:
  enum class Stream : std::uint64_t {
    kInit = 0x696e6974ULL,  // "init"
    kData = 0x64617461ULL,  // "data"
    kTest = 0x74657374ULL,  // "test"
  };

  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, Stream stream);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer on [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  double normal();

  friend bool operator==(const Rng& a, const Rng& b) {
    return a.engine_ == b.engine_;
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace ginn

#endif  // GINN_RNG_H_
