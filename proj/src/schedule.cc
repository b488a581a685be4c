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

#include "ginn/schedule.h"

#include <algorithm>
#include <cmath>

#include "ginn/error.h"

namespace ginn {

std::string_view ScheduleModeName(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kLogSpaced: return "log-spaced";
    case ScheduleMode::kUniform: return "uniform";
    case ScheduleMode::kExplicit: return "explicit";
  }
  return "uniform";
}

ScheduleMode ParseScheduleMode(std::string_view name) {
  if (name == "log-spaced") return ScheduleMode::kLogSpaced;
  if (name == "uniform") return ScheduleMode::kUniform;
  if (name == "explicit") return ScheduleMode::kExplicit;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown schedule mode '" + std::string(name) + "'");
}

bool SnapshotSchedule::Contains(std::int64_t iteration) const {
  return std::binary_search(iterations.begin(), iterations.end(), iteration);
}

SnapshotSchedule make_schedule(std::int64_t total, int count, ScheduleMode mode) {
  if (mode == ScheduleMode::kExplicit) {
    throw Error(ErrorCode::kInvalidArgument,
                "explicit schedules need an iteration list");
  }
  if (total < 0) throw Error(ErrorCode::kInvalidArgument, "negative run length");
  if (total == 0) return {mode, {0}};
  if (count < 2) {
    throw Error(ErrorCode::kInvalidArgument, "schedule needs at least 2 snapshots");
  }
  if (count > total + 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot place " + std::to_string(count) + " snapshots in " +
                    std::to_string(total) + " iterations");
  }

  SnapshotSchedule schedule{mode, {}};
  auto& its = schedule.iterations;
  if (mode == ScheduleMode::kUniform) {
    const std::int64_t intervals = count - 1;
    for (std::int64_t k = 0; k < count; ++k) {
      its.push_back((2 * k * total + intervals) / (2 * intervals));
    }
  } else {
    its.push_back(0);
    const int points = count - 1;
    for (int k = 0; k < points; ++k) {
      const double exponent = points == 1 ? 1.0 : static_cast<double>(k) / (points - 1);
      its.push_back(std::llround(std::pow(static_cast<double>(total), exponent)));
    }
    its.back() = total;
    its.erase(std::unique(its.begin(), its.end()), its.end());
  }
  return schedule;
}

SnapshotSchedule make_explicit_schedule(std::int64_t total,
                                        std::vector<std::int64_t> iterations) {
  for (std::int64_t it : iterations) {
    if (it < 0 || it > total) {
      throw Error(ErrorCode::kInvalidArgument,
                  "snapshot iteration " + std::to_string(it) + " outside run");
    }
  }
  iterations.push_back(0);
  iterations.push_back(total);
  std::sort(iterations.begin(), iterations.end());
  iterations.erase(std::unique(iterations.begin(), iterations.end()), iterations.end());
  return {ScheduleMode::kExplicit, std::move(iterations)};
}

void ValidateSchedule(const SnapshotSchedule& schedule, std::int64_t total) {
  const auto& its = schedule.iterations;
  if (its.empty() || its.front() != 0 || its.back() != total) {
    throw Error(ErrorCode::kInvalidArgument, "schedule must span [0, total]");
  }
  for (std::size_t i = 1; i < its.size(); ++i) {
    if (its[i] <= its[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "schedule must be strictly increasing");
    }
  }
}

}  // namespace ginn
