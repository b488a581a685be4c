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

#ifndef GINN_BOUNDARY_H_
#define GINN_BOUNDARY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ginn/geometry_types.h"
#include "ginn/net.h"

namespace ginn {

// Sampling lattice over the closed unit square. Nodes sit at i / (n - 1) on
// both axes, so the outermost nodes lie on the domain border.
struct GridSpec {
  static constexpr int kMinResolution = 16;
  int resolution = 256;

  void Validate() const;
  double spacing() const { return 1.0 / (resolution - 1); }
  double coord(int i) const { return static_cast<double>(i) / (resolution - 1); }
  Point node(int i, int j) const { return {coord(i), coord(j)}; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Samples f(node(i, j)) stored row-major: values[j * resolution + i].
struct ScalarField {
  GridSpec grid;
  std::vector<double> values;

  double at(int i, int j) const {
    return values[static_cast<std::size_t>(j) * grid.resolution + i];
  }
};

// Exact evaluation of the sampled function at an arbitrary point; used to
// resolve saddle cells.
using FieldSampler = std::function<double(Point)>;

// Zero set of one hidden neuron's preactivation. `layer` is 1-based.
struct Boundary {
  int layer = 1;
  int neuron = 0;
  std::vector<Polyline> polylines;

  bool empty() const { return polylines.empty(); }
  // All polyline vertices, concatenated.
  std::vector<Point> vertices() const;

  friend bool operator==(const Boundary&, const Boundary&) = default;
};

// One Boundary per hidden neuron, ordered by (layer, neuron).
struct BoundarySet {
  GridSpec grid;
  int hidden_layers = 0;
  int hidden_width = 0;
  std::vector<Boundary> boundaries;

  const Boundary& at(int layer, int neuron) const {
    return boundaries[static_cast<std::size_t>(layer - 1) * hidden_width + neuron];
  }

  friend bool operator==(const BoundarySet&, const BoundarySet&) = default;
};

// Layer-1 boundary in normal form {p : n(angle) . p = offset}, where n points
// into the half-plane on which the neuron is active.
struct LineParams {
  double angle = 0.0;   // [0, 2 pi)
  double offset = 0.0;
};

ScalarField preactivation_field(const NetworkParams& params, int layer,
                                int neuron, const GridSpec& grid);

// Every hidden neuron's field from a single sweep of the grid, indexed
// (layer - 1) * hidden_width + neuron.
std::vector<ScalarField> all_preactivation_fields(const NetworkParams& params,
                                                  const GridSpec& grid);

// Exact preactivation of one neuron at p.
double preactivation_at(const NetworkParams& params, int layer, int neuron, Point p);

// A grid edge. Horizontal edges join node (i, j) to (i + 1, j); vertical
// edges join (i, j) to (i, j + 1).
struct GridEdge {
  bool horizontal = true;
  int i = 0;
  int j = 0;

  std::int64_t key(int resolution) const {
    return (static_cast<std::int64_t>(j) * resolution + i) * 2 + (horizontal ? 0 : 1);
  }
  friend bool operator==(const GridEdge&, const GridEdge&) = default;
};

struct ContourSegment {
  GridEdge from;
  GridEdge to;
  Point a;
  Point b;
};

// Marching-squares segments, one or two per cell, cells in row-major order.
// A node is positive when its value is >= 0. Edge crossings use linear
// interpolation from the lower-index node. Saddle cells are split by the sign
// of `center` at the cell center, or of the corner mean when no sampler is
// given.
std::vector<ContourSegment> contour_segments(const ScalarField& field,
                                             const FieldSampler& center = {});

// The segments above, linked into maximal polylines. Closed loops repeat their
// first vertex at the end. A field without a sign change yields no polylines.
std::vector<Polyline> extract_zero_contour(const ScalarField& field,
                                           const FieldSampler& center = {});

// Throws kDegenerateNeuron when the weight vector norm is <= 1e-12.
LineParams layer1_line(const NetworkParams& params, int neuron);

// Distance from p to the analytic layer-1 line.
double DistanceToLine(const LineParams& line, Point p);

// Per-neuron extraction runs on ParallelFor workers.
BoundarySet extract_all_boundaries(const NetworkParams& params,
                                   const GridSpec& grid);

// Largest distance from any vertex to the chord joining the polyline's end
// points (to the start point when the polyline is closed).
double chord_deviation(const Polyline& polyline);

// Symmetric Hausdorff distance between two non-empty point sets.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

}  // namespace ginn

#endif  // GINN_BOUNDARY_H_
