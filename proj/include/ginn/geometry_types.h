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

#ifndef GINN_GEOMETRY_TYPES_H_
#define GINN_GEOMETRY_TYPES_H_

#include <cmath>
#include <vector>

namespace ginn {

// A location in the data domain. x grows to the right, y grows downward
// (row 0 of an image is y near 0).
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double Dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double Distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline bool InUnitSquare(Point p) {
  return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

using Polyline = std::vector<Point>;

// Distance from p to the closed segment [a, b].
double PointSegmentDistance(Point p, Point a, Point b);

}  // namespace ginn

#endif  // GINN_GEOMETRY_TYPES_H_
