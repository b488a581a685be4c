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

#include "ginn/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "ginn/error.h"

namespace ginn {
namespace {

double WrapAngle(double a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  a = std::fmod(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

Boundary Mirrored(const Boundary& b) {
  Boundary out = b;
  for (auto& line : out.polylines) {
    for (auto& p : line) p.x = 1.0 - p.x;
  }
  return out;
}

// ---- silhouette tracing for critical_points --------------------------------

struct Lattice {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Lattice&, const Lattice&) = default;
};

struct Step {
  Lattice from;
  Lattice to;
};

// Unit pixel edges separating black from white, oriented so that black lies
// on a consistent side. Edges on the image border are not part of the
// silhouette.
std::vector<Step> LabelBoundarySteps(const TargetImage& t) {
  std::vector<Step> steps;
  const auto black = [&](int i, int j) { return t.label(i, j) == Label::kBlack; };
  for (int v = 0; v < t.height(); ++v) {
    for (int u = 1; u < t.width(); ++u) {
      const bool left = black(u - 1, v);
      if (left == black(u, v)) continue;
      steps.push_back(left ? Step{{u, v}, {u, v + 1}} : Step{{u, v + 1}, {u, v}});
    }
  }
  for (int v = 1; v < t.height(); ++v) {
    for (int u = 0; u < t.width(); ++u) {
      const bool below = black(u, v);
      if (below == black(u, v - 1)) continue;
      steps.push_back(below ? Step{{u, v}, {u + 1, v}} : Step{{u + 1, v}, {u, v}});
    }
  }
  return steps;
}

struct Chain {
  std::vector<Point> vertices;  // lattice units
  bool closed = false;
};

std::vector<Chain> TraceChains(const std::vector<Step>& steps) {
  std::map<Lattice, std::vector<int>> outgoing;
  std::map<Lattice, int> incoming;
  for (int s = 0; s < static_cast<int>(steps.size()); ++s) {
    outgoing[steps[s].from].push_back(s);
    ++incoming[steps[s].to];
  }
  std::vector<bool> used(steps.size(), false);

  // At a vertex shared by two diagonal pixels there are two ways out; always
  // take the sharpest clockwise turn so the choice is deterministic.
  auto next_step = [&](int s) -> int {
    const auto it = outgoing.find(steps[s].to);
    if (it == outgoing.end()) return -1;
    const Point in{static_cast<double>(steps[s].to.x - steps[s].from.x),
                   static_cast<double>(steps[s].to.y - steps[s].from.y)};
    int best = -1;
    double best_turn = 0.0;
    for (int cand : it->second) {
      if (used[cand]) continue;
      const Point out{static_cast<double>(steps[cand].to.x - steps[cand].from.x),
                      static_cast<double>(steps[cand].to.y - steps[cand].from.y)};
      const double turn = std::atan2(Cross(in, out), Dot(in, out));
      if (best < 0 || turn > best_turn) {
        best = cand;
        best_turn = turn;
      }
    }
    return best;
  };

  auto follow = [&](int s) {
    Chain chain;
    const Lattice start = steps[s].from;
    chain.vertices.push_back({static_cast<double>(start.x), static_cast<double>(start.y)});
    while (s >= 0) {
      used[s] = true;
      chain.vertices.push_back(
          {static_cast<double>(steps[s].to.x), static_cast<double>(steps[s].to.y)});
      if (steps[s].to == start) {
        chain.closed = true;
        chain.vertices.pop_back();
        break;
      }
      s = next_step(s);
    }
    return chain;
  };

  std::vector<Chain> chains;
  for (int s = 0; s < static_cast<int>(steps.size()); ++s) {
    if (!used[s] && incoming[steps[s].from] == 0) chains.push_back(follow(s));
  }
  for (int s = 0; s < static_cast<int>(steps.size()); ++s) {
    if (!used[s]) chains.push_back(follow(s));
  }
  return chains;
}

void Rdp(const std::vector<Point>& pts, std::size_t first, std::size_t last,
         double tolerance, std::vector<Point>& out) {
  double worst = 0.0;
  std::size_t index = first;
  for (std::size_t k = first + 1; k < last; ++k) {
    const double d = PointSegmentDistance(pts[k], pts[first], pts[last]);
    if (d > worst) {
      worst = d;
      index = k;
    }
  }
  if (worst > tolerance) {
    Rdp(pts, first, index, tolerance, out);
    Rdp(pts, index, last, tolerance, out);
  } else {
    out.push_back(pts[first]);
  }
}

constexpr double kSimplifyTolerance = 1.0;  // lattice units
constexpr double kMergeDistance = 2.0;      // lattice units
constexpr double kCornerTurn = std::numbers::pi / 4.0;

std::vector<Point> Simplify(const Chain& chain) {
  const auto& v = chain.vertices;
  if (v.size() < 3) return v;
  std::vector<Point> out;
  if (chain.closed) {
    // Start at the lexicographically smallest vertex (a hull vertex) and
    // split the loop at the vertex farthest from it.
    const std::size_t start = static_cast<std::size_t>(
        std::min_element(v.begin(), v.end(),
                         [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }) -
        v.begin());
    std::vector<Point> loop(v.begin() + static_cast<long>(start), v.end());
    loop.insert(loop.end(), v.begin(), v.begin() + static_cast<long>(start));
    loop.push_back(loop.front());
    std::size_t far = 0;
    for (std::size_t k = 1; k + 1 < loop.size(); ++k) {
      if (Distance(loop[k], loop[0]) > Distance(loop[far], loop[0])) far = k;
    }
    Rdp(loop, 0, far, kSimplifyTolerance, out);
    Rdp(loop, far, loop.size() - 1, kSimplifyTolerance, out);
  } else {
    Rdp(v, 0, v.size() - 1, kSimplifyTolerance, out);
    out.push_back(v.back());
  }

  // Collapse runs of nearby vertices (flattened tips of rasterized corners).
  std::vector<Point> merged;
  std::size_t k = 0;
  while (k < out.size()) {
    Point sum = out[k];
    std::size_t count = 1;
    std::size_t m = k + 1;
    const bool pinned_end = !chain.closed && (k == 0);
    while (!pinned_end && m < out.size() && Distance(out[m - 1], out[m]) <= kMergeDistance &&
           (chain.closed || m + 1 < out.size())) {
      sum = sum + out[m];
      ++count;
      ++m;
    }
    merged.push_back((1.0 / static_cast<double>(count)) * sum);
    k = m;
  }
  if (chain.closed && merged.size() > 1 &&
      Distance(merged.front(), merged.back()) <= kMergeDistance) {
    merged.front() = 0.5 * (merged.front() + merged.back());
    merged.pop_back();
  }
  return merged;
}

}  // namespace

std::optional<double> ShiftReport::offset_to_angle_ratio() const {
  if (counted == 0 || mean_abs_delta_angle == 0.0) return std::nullopt;
  return mean_abs_delta_offset / mean_abs_delta_angle;
}

ShiftReport bias_weight_shift(const NetworkParams& a, const NetworkParams& b) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kShapeMismatch, "bias_weight_shift: snapshots differ in shape");
  }
  ShiftReport report;
  report.layer = 1;
  const int width = a.hidden_width();
  double sum_angle = 0.0;
  double sum_offset = 0.0;
  for (int n = 0; n < width; ++n) {
    NeuronShift shift{n, false, 0.0, 0.0};
    try {
      const LineParams la = layer1_line(a, n);
      const LineParams lb = layer1_line(b, n);
      shift.delta_angle = WrapAngle(lb.angle - la.angle);
      shift.delta_offset = lb.offset - la.offset;
      sum_angle += std::abs(shift.delta_angle);
      sum_offset += std::abs(shift.delta_offset);
      ++report.counted;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateNeuron) throw;
      shift.degenerate = true;
    }
    report.neurons.push_back(shift);
  }
  if (report.counted > 0) {
    report.mean_abs_delta_angle = sum_angle / report.counted;
    report.mean_abs_delta_offset = sum_offset / report.counted;
  }
  return report;
}

SignPatterns SignPatterns::Compute(const NetworkParams& params, const GridSpec& grid) {
  SignPatterns out{grid, params.hidden_width(), {}};
  for (const ScalarField& field : all_preactivation_fields(params, grid)) {
    std::vector<bool> pos(field.values.size());
    for (std::size_t k = 0; k < pos.size(); ++k) pos[k] = field.values[k] >= 0.0;
    out.positive.push_back(std::move(pos));
  }
  return out;
}

bool SignPatterns::has_boundary(int layer, int neuron) const {
  const auto& p = of(layer, neuron);
  return std::find(p.begin(), p.end(), !p.front()) != p.end();
}

double SignPatterns::similarity(int layer, int i, int j) const {
  const auto& a = of(layer, i);
  const auto& b = of(layer, j);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < a.size(); ++k) agree += a[k] == b[k] ? 1 : 0;
  const double q = static_cast<double>(agree) / static_cast<double>(a.size());
  return std::max(q, 1.0 - q);
}

double activation_pattern_similarity(const NetworkParams& params,
                                     const GridSpec& grid, int layer,
                                     int first, int second) {
  const int width = params.hidden_width();
  if (layer < 1 || layer > params.hidden_layers() || first < 0 || first >= width ||
      second < 0 || second >= width) {
    throw Error(ErrorCode::kInvalidArgument, "activation_pattern_similarity: bad neuron index");
  }
  return SignPatterns::Compute(params, grid).similarity(layer, first, second);
}

CopycatReport detect_copycats(const NetworkParams& params, const GridSpec& grid,
                              double threshold) {
  const SignPatterns patterns = SignPatterns::Compute(params, grid);
  CopycatReport report{threshold, {}};
  for (int l = 1; l <= params.hidden_layers(); ++l) {
    for (int i = 0; i < params.hidden_width(); ++i) {
      if (!patterns.has_boundary(l, i)) continue;
      for (int j = i + 1; j < params.hidden_width(); ++j) {
        if (!patterns.has_boundary(l, j)) continue;
        const double s = patterns.similarity(l, i, j);
        if (s >= threshold) report.pairs.push_back({l, i, j, s});
      }
    }
  }
  return report;
}

double boundary_distance(const Boundary& a, const Boundary& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return kMissingBoundaryDistance;
  const std::vector<Point> va = a.vertices();
  const std::vector<Point> vb = b.vertices();
  return hausdorff_distance(va, vb);
}

FlipReport boundary_flip(const BoundarySet& a, const BoundarySet& b,
                         std::pair<double, double> losses) {
  if (a.boundaries.size() != b.boundaries.size() || !(a.grid == b.grid)) {
    throw Error(ErrorCode::kShapeMismatch, "boundary_flip: boundary sets differ in shape");
  }
  FlipReport report;
  report.loss_delta = std::abs(losses.first - losses.second);
  for (std::size_t k = 0; k < a.boundaries.size(); ++k) {
    const Boundary& ba = a.boundaries[k];
    report.neurons.push_back({ba.layer, ba.neuron, boundary_distance(ba, b.boundaries[k])});
  }
  return report;
}

SymmetryReport symmetry_score(const NetworkParams& params,
                              const BoundarySet& boundaries,
                              const GridSpec& grid) {
  grid.Validate();
  const int n = grid.resolution;
  std::vector<double> p_white(static_cast<std::size_t>(n) * n);
  NetworkEvaluator eval(params);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      p_white[static_cast<std::size_t>(j) * n + i] =
          std::exp(eval.Run(grid.node(i, j)).log_prob_white());
    }
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      total += std::abs(p_white[static_cast<std::size_t>(j) * n + i] -
                        p_white[static_cast<std::size_t>(j) * n + (n - 1 - i)]);
    }
  }

  SymmetryReport report;
  report.prediction_mirror_error = total / static_cast<double>(p_white.size());
  const int width = boundaries.hidden_width;
  for (int l = 1; l <= boundaries.hidden_layers; ++l) {
    std::vector<Boundary> mirrored;
    for (int k = 0; k < width; ++k) mirrored.push_back(Mirrored(boundaries.at(l, k)));
    double sum = 0.0;
    for (int i = 0; i < width; ++i) {
      double best = kMissingBoundaryDistance;
      for (int k = 0; k < width; ++k) {
        best = std::min(best, boundary_distance(boundaries.at(l, i), mirrored[k]));
      }
      sum += best;
    }
    report.layer_mirror_distance.push_back(sum / width);
  }
  return report;
}

SymmetryReport symmetry_score(const NetworkParams& params, const GridSpec& grid) {
  return symmetry_score(params, extract_all_boundaries(params, grid), grid);
}

std::vector<Point> critical_points(const TargetImage& target) {
  std::vector<Point> corners;
  for (const Chain& chain : TraceChains(LabelBoundarySteps(target))) {
    const std::vector<Point> simple = Simplify(chain);
    const std::size_t m = simple.size();
    if (m < 3) continue;
    for (std::size_t k = 0; k < m; ++k) {
      if (!chain.closed && (k == 0 || k + 1 == m)) continue;
      const Point prev = simple[(k + m - 1) % m];
      const Point next = simple[(k + 1) % m];
      const Point in = simple[k] - prev;
      const Point out = next - simple[k];
      const double turn = std::abs(std::atan2(Cross(in, out), Dot(in, out)));
      if (turn >= kCornerTurn) {
        corners.push_back({simple[k].x / target.width(), simple[k].y / target.height()});
      }
    }
  }
  std::sort(corners.begin(), corners.end(), [](Point a, Point b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  return corners;
}

CornerReport corner_proximity(const BoundarySet& boundaries,
                              const std::vector<Point>& corners) {
  if (corners.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "corner_proximity: no corners");
  }
  std::vector<std::vector<Point>> layer_vertices(static_cast<std::size_t>(boundaries.hidden_layers));
  for (const Boundary& b : boundaries.boundaries) {
    const auto v = b.vertices();
    auto& dst = layer_vertices[static_cast<std::size_t>(b.layer - 1)];
    dst.insert(dst.end(), v.begin(), v.end());
  }
  CornerReport report;
  double sum = 0.0;
  std::size_t count = 0;
  for (const Point& c : corners) {
    CornerDistances entry{c, {}};
    for (const auto& verts : layer_vertices) {
      double best = kMissingBoundaryDistance;
      for (const Point& p : verts) best = std::min(best, Distance(c, p));
      entry.per_layer.push_back(best);
      sum += best;
      ++count;
    }
    report.corners.push_back(std::move(entry));
  }
  report.mean_distance = count == 0 ? 0.0 : sum / static_cast<double>(count);
  return report;
}

double pixel_accuracy(const NetworkParams& params, const TargetImage& target) {
  NetworkEvaluator eval(params);
  std::size_t correct = 0;
  for (int j = 0; j < target.height(); ++j) {
    for (int i = 0; i < target.width(); ++i) {
      if (eval.Run(pixel_to_coord(i, j, target)).predicted() == target.label(i, j)) {
        ++correct;
      }
    }
  }
  return static_cast<double>(correct) / static_cast<double>(target.pixel_count());
}

}  // namespace ginn
