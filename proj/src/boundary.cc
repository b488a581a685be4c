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

#include "ginn/boundary.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_map>

#include "ginn/error.h"
#include "ginn/parallel.h"

namespace ginn {
namespace {

void CheckNeuron(const NetworkParams& params, int layer, int neuron) {
  if (layer < 1 || layer > params.hidden_layers() || neuron < 0 ||
      neuron >= params.layers[layer - 1].rows) {
    throw Error(ErrorCode::kInvalidArgument,
                "no neuron (" + std::to_string(layer) + ", " +
                    std::to_string(neuron) + ") in this network");
  }
}

bool Positive(double v) { return v >= 0.0; }

// Edge endpoints in lattice order (lower index first).
std::pair<std::pair<int, int>, std::pair<int, int>> EdgeNodes(const GridEdge& e) {
  if (e.horizontal) return {{e.i, e.j}, {e.i + 1, e.j}};
  return {{e.i, e.j}, {e.i, e.j + 1}};
}

Point Crossing(const ScalarField& field, const GridEdge& e) {
  const auto [n0, n1] = EdgeNodes(e);
  const double f0 = field.at(n0.first, n0.second);
  const double f1 = field.at(n1.first, n1.second);
  const double t = f0 / (f0 - f1);
  const Point p0 = field.grid.node(n0.first, n0.second);
  const Point p1 = field.grid.node(n1.first, n1.second);
  Point p = p0 + t * (p1 - p0);
  p.x = std::clamp(p.x, 0.0, 1.0);
  p.y = std::clamp(p.y, 0.0, 1.0);
  return p;
}

}  // namespace

double PointSegmentDistance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = Dot(ab, ab);
  if (len2 == 0.0) return Distance(p, a);
  const double t = std::clamp(Dot(p - a, ab) / len2, 0.0, 1.0);
  return Distance(p, a + t * ab);
}

void GridSpec::Validate() const {
  if (resolution < kMinResolution) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid resolution must be >= " + std::to_string(kMinResolution));
  }
}

std::vector<Point> Boundary::vertices() const {
  std::vector<Point> out;
  for (const auto& line : polylines) out.insert(out.end(), line.begin(), line.end());
  return out;
}

double preactivation_at(const NetworkParams& params, int layer, int neuron, Point p) {
  CheckNeuron(params, layer, neuron);
  NetworkEvaluator eval(params);
  return eval.Run(p).preactivations[layer - 1][neuron];
}

ScalarField preactivation_field(const NetworkParams& params, int layer,
                                int neuron, const GridSpec& grid) {
  grid.Validate();
  CheckNeuron(params, layer, neuron);
  NetworkEvaluator eval(params);
  const int n = grid.resolution;
  ScalarField field{grid, std::vector<double>(static_cast<std::size_t>(n) * n)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      field.values[static_cast<std::size_t>(j) * n + i] =
          eval.Run(grid.node(i, j)).preactivations[layer - 1][neuron];
    }
  }
  return field;
}

std::vector<ScalarField> all_preactivation_fields(const NetworkParams& params,
                                                  const GridSpec& grid) {
  grid.Validate();
  const int layers = params.hidden_layers();
  const int width = params.hidden_width();
  const int n = grid.resolution;
  const std::size_t nodes = static_cast<std::size_t>(n) * n;
  std::vector<ScalarField> fields(static_cast<std::size_t>(layers) * width,
                                  ScalarField{grid, std::vector<double>(nodes)});
  NetworkEvaluator eval(params);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const ForwardTrace& trace = eval.Run(grid.node(i, j));
      const std::size_t node = static_cast<std::size_t>(j) * n + i;
      for (int l = 0; l < layers; ++l) {
        for (int k = 0; k < width; ++k) {
          fields[static_cast<std::size_t>(l) * width + k].values[node] =
              trace.preactivations[l][k];
        }
      }
    }
  }
  return fields;
}

std::vector<ContourSegment> contour_segments(const ScalarField& field,
                                             const FieldSampler& center) {
  const int n = field.grid.resolution;
  std::vector<ContourSegment> segments;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      // Corners a, b, c, d go around the cell; edges follow the same order.
      const std::array<double, 4> v = {field.at(i, j), field.at(i + 1, j),
                                       field.at(i + 1, j + 1), field.at(i, j + 1)};
      const std::array<bool, 4> pos = {Positive(v[0]), Positive(v[1]),
                                       Positive(v[2]), Positive(v[3])};
      const std::array<GridEdge, 4> edges = {GridEdge{true, i, j},
                                             GridEdge{false, i + 1, j},
                                             GridEdge{true, i, j + 1},
                                             GridEdge{false, i, j}};
      std::array<int, 4> crossed{};
      int count = 0;
      for (int e = 0; e < 4; ++e) {
        if (pos[e] != pos[(e + 1) % 4]) crossed[count++] = e;
      }
      if (count == 0) continue;

      auto emit = [&](int e0, int e1) {
        segments.push_back({edges[e0], edges[e1], Crossing(field, edges[e0]),
                            Crossing(field, edges[e1])});
      };
      if (count == 2) {
        emit(crossed[0], crossed[1]);
        continue;
      }

      // Saddle: a and c share a sign, b and d the other. The corner pair
      // whose sign differs from the center gets cut off.
      const double mid =
          center ? center(field.grid.node(i, j) +
                          0.5 * Point{field.grid.spacing(), field.grid.spacing()})
                 : (v[0] + v[1] + v[2] + v[3]) / 4.0;
      if (Positive(mid) == pos[0]) {
        // Isolate b (edges ab, bc) and d (edges cd, da).
        emit(0, 1);
        emit(2, 3);
      } else {
        // Isolate a (edges da, ab) and c (edges bc, cd).
        emit(3, 0);
        emit(1, 2);
      }
    }
  }
  return segments;
}

std::vector<Polyline> extract_zero_contour(const ScalarField& field,
                                           const FieldSampler& center) {
  const std::vector<ContourSegment> segments = contour_segments(field, center);
  const int n = field.grid.resolution;

  // Each edge crossing is shared by at most two segments (the two cells on
  // either side of the edge).
  std::unordered_map<std::int64_t, std::array<int, 2>> by_edge;
  by_edge.reserve(segments.size() * 2);
  auto attach = [&](const GridEdge& e, int s) {
    auto [it, inserted] = by_edge.try_emplace(e.key(n), std::array<int, 2>{-1, -1});
    (it->second[0] < 0 ? it->second[0] : it->second[1]) = s;
  };
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    attach(segments[s].from, s);
    attach(segments[s].to, s);
  }
  auto degree = [&](const GridEdge& e) {
    const auto& slots = by_edge.at(e.key(n));
    return (slots[0] >= 0 ? 1 : 0) + (slots[1] >= 0 ? 1 : 0);
  };

  std::vector<bool> used(segments.size(), false);
  std::vector<Polyline> lines;

  auto walk = [&](int s, bool forward) {
    Polyline line;
    GridEdge at = forward ? segments[s].from : segments[s].to;
    line.push_back(forward ? segments[s].a : segments[s].b);
    while (s >= 0 && !used[s]) {
      used[s] = true;
      const ContourSegment& seg = segments[s];
      const bool from_side = seg.from == at;
      at = from_side ? seg.to : seg.from;
      line.push_back(from_side ? seg.b : seg.a);
      const auto& slots = by_edge.at(at.key(n));
      s = slots[0] >= 0 && !used[slots[0]] ? slots[0]
          : slots[1] >= 0 && !used[slots[1]] ? slots[1]
                                               : -1;
    }
    lines.push_back(std::move(line));
  };

  // Open chains start at a crossing used by a single segment (on the border).
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (used[s]) continue;
    if (degree(segments[s].from) == 1) {
      walk(s, true);
    } else if (degree(segments[s].to) == 1) {
      walk(s, false);
    }
  }
  // What is left forms closed loops.
  for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
    if (!used[s]) walk(s, true);
  }
  return lines;
}

LineParams layer1_line(const NetworkParams& params, int neuron) {
  CheckNeuron(params, 1, neuron);
  const DenseLayer& layer = params.layers.front();
  const double wx = layer.weight(neuron, 0);
  const double wy = layer.weight(neuron, 1);
  const double norm = std::hypot(wx, wy);
  if (!(norm > 1e-12)) {
    throw Error(ErrorCode::kDegenerateNeuron,
                "degenerate neuron: layer-1 neuron " + std::to_string(neuron) +
                    " has a near-zero weight vector");
  }
  double angle = std::atan2(wy, wx);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  if (angle >= 2.0 * std::numbers::pi) angle = 0.0;
  return {angle, -layer.bias[neuron] / norm};
}

double DistanceToLine(const LineParams& line, Point p) {
  return std::abs(std::cos(line.angle) * p.x + std::sin(line.angle) * p.y - line.offset);
}

BoundarySet extract_all_boundaries(const NetworkParams& params,
                                   const GridSpec& grid) {
  const std::vector<ScalarField> fields = all_preactivation_fields(params, grid);
  BoundarySet set{grid, params.hidden_layers(), params.hidden_width(), {}};
  set.boundaries.resize(fields.size());
  const int width = params.hidden_width();

  ParallelFor(fields.size(), [&](std::size_t index) {
    const int layer = static_cast<int>(index) / width + 1;
    const int neuron = static_cast<int>(index) % width;
    NetworkEvaluator eval(params);
    FieldSampler center = [&](Point p) {
      return eval.Run(p).preactivations[layer - 1][neuron];
    };
    set.boundaries[index] = {layer, neuron, extract_zero_contour(fields[index], center)};
  });
  return set;
}

double chord_deviation(const Polyline& polyline) {
  if (polyline.size() < 3) return 0.0;
  const Point a = polyline.front();
  const Point b = polyline.back();
  double worst = 0.0;
  for (const Point& p : polyline) {
    worst = std::max(worst, a == b ? Distance(p, a) : PointSegmentDistance(p, a, b));
  }
  return worst;
}

namespace {

// max over a of min over b, with the usual early exit once a point is known
// to be closer than the running maximum.
double DirectedHausdorffSquared(std::span<const Point> a, std::span<const Point> b) {
  double worst = 0.0;
  for (const Point& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : b) {
      const double dx = p.x - q.x;
      const double dy = p.y - q.y;
      const double d = dx * dx + dy * dy;
      if (d < best) {
        best = d;
        if (best <= worst) break;
      }
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "hausdorff_distance of an empty set");
  }
  return std::sqrt(std::max(DirectedHausdorffSquared(a, b), DirectedHausdorffSquared(b, a)));
}

}  // namespace ginn
