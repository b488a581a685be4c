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

#ifndef GINN_SCHEDULE_H_
#define GINN_SCHEDULE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ginn {

enum class ScheduleMode { kLogSpaced, kUniform, kExplicit };

std::string_view ScheduleModeName(ScheduleMode mode);
// Accepts "log-spaced", "uniform", "explicit". Throws kInvalidArgument.
ScheduleMode ParseScheduleMode(std::string_view name);

// Iterations at which parameter snapshots are taken. Strictly increasing,
// always starts at 0 and ends at the run length.
struct SnapshotSchedule {
  ScheduleMode mode = ScheduleMode::kUniform;
  std::vector<std::int64_t> iterations;

  bool Contains(std::int64_t iteration) const;
  friend bool operator==(const SnapshotSchedule&, const SnapshotSchedule&) = default;
};

// count >= 2 snapshots over [0, total]. Log-spaced mode places count-1 points
// geometrically between 1 and total, prepends 0 and drops duplicate rounded
// values, so it can return fewer than `count` entries. A zero-length run
// always yields {0}. Throws kInvalidArgument when count > total + 1 or
// count < 2, or for kExplicit (use make_explicit_schedule).
SnapshotSchedule make_schedule(std::int64_t total, int count,
                               ScheduleMode mode = ScheduleMode::kLogSpaced);

// Sorts and deduplicates `iterations`, adds 0 and total. Throws if any value
// lies outside [0, total].
SnapshotSchedule make_explicit_schedule(std::int64_t total,
                                        std::vector<std::int64_t> iterations);

// Throws kInvalidArgument if the schedule is not strictly increasing from 0
// to total.
void ValidateSchedule(const SnapshotSchedule& schedule, std::int64_t total);

}  // namespace ginn

#endif  // GINN_SCHEDULE_H_
