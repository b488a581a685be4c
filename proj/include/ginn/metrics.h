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

#ifndef GINN_METRICS_H_
#define GINN_METRICS_H_

#include <optional>
#include <utility>
#include <vector>

#include "ginn/boundary.h"
#include "ginn/data.h"
#include "ginn/net.h"

namespace ginn {

// Distance reported when one side of a comparison has no boundary at all:
// the diagonal of the unit square.
inline constexpr double kMissingBoundaryDistance = 1.4142135623730951;

// How much each layer-1 line rotated and translated between two snapshots.
struct NeuronShift {
  int neuron = 0;
  bool degenerate = false;     // excluded from the means
  double delta_angle = 0.0;    // wrapped to (-pi, pi]
  double delta_offset = 0.0;   // domain units
};

struct ShiftReport {
  int layer = 1;
  std::vector<NeuronShift> neurons;
  double mean_abs_delta_angle = 0.0;
  double mean_abs_delta_offset = 0.0;
  int counted = 0;

  // mean |delta offset| / mean |delta angle|; nullopt if no rotation at all.
  std::optional<double> offset_to_angle_ratio() const;
};

struct NeuronPair {
  int layer = 1;
  int first = 0;
  int second = 0;
  double similarity = 0.0;

  friend bool operator==(const NeuronPair&, const NeuronPair&) = default;
};

struct CopycatReport {
  double threshold = 0.98;
  std::vector<NeuronPair> pairs;
};

struct NeuronFlip {
  int layer = 1;
  int neuron = 0;
  double distance = 0.0;
};

struct FlipReport {
  std::vector<NeuronFlip> neurons;
  double loss_delta = 0.0;  // |loss_a - loss_b|
};

struct SymmetryReport {
  double prediction_mirror_error = 0.0;
  std::vector<double> layer_mirror_distance;  // index 0 is layer 1
};

struct CornerDistances {
  Point corner;
  std::vector<double> per_layer;  // index 0 is layer 1
};

struct CornerReport {
  std::vector<CornerDistances> corners;
  double mean_distance = 0.0;  // over every corner and layer
};

// Layer-1 rotation/translation between two parameter snapshots.
ShiftReport bias_weight_shift(const NetworkParams& a, const NetworkParams& b);

// Which side of zero each grid node falls on for every hidden neuron,
// indexed like all_preactivation_fields. Shared by the similarity measures.
struct SignPatterns {
  GridSpec grid;
  int hidden_width = 0;
  std::vector<std::vector<bool>> positive;

  static SignPatterns Compute(const NetworkParams& params, const GridSpec& grid);
  const std::vector<bool>& of(int layer, int neuron) const {
    return positive[static_cast<std::size_t>(layer - 1) * hidden_width + neuron];
  }
  // False when the neuron is on (or off) across the whole grid.
  bool has_boundary(int layer, int neuron) const;
  double similarity(int layer, int i, int j) const;
};

// max(q, 1 - q) where q is the fraction of grid nodes on which the two
// neurons are on the same side of zero.
double activation_pattern_similarity(const NetworkParams& params,
                                     const GridSpec& grid, int layer,
                                     int first, int second);

// Same-layer pairs with similarity >= threshold. Neurons that never change
// sign on the grid are skipped: they draw no boundary to copy.
CopycatReport detect_copycats(const NetworkParams& params, const GridSpec& grid,
                              double threshold = 0.98);

// Symmetric Hausdorff distance between vertex sets; two empty sets are 0 apart
// and an empty set is kMissingBoundaryDistance from anything else.
double boundary_distance(const Boundary& a, const Boundary& b);

FlipReport boundary_flip(const BoundarySet& a, const BoundarySet& b,
                         std::pair<double, double> losses);

SymmetryReport symmetry_score(const NetworkParams& params,
                              const BoundarySet& boundaries,
                              const GridSpec& grid);
// Convenience overload that extracts the boundaries itself.
SymmetryReport symmetry_score(const NetworkParams& params, const GridSpec& grid);

// Corners of the black/white silhouette in normalized coordinates.
std::vector<Point> critical_points(const TargetImage& target);

CornerReport corner_proximity(const BoundarySet& boundaries,
                              const std::vector<Point>& corners);

// Fraction of pixels whose argmax class equals the label.
double pixel_accuracy(const NetworkParams& params, const TargetImage& target);

}  // namespace ginn

#endif  // GINN_METRICS_H_
