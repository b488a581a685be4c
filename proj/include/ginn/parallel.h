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

#ifndef GINN_PARALLEL_H_
#define GINN_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ginn {

// Worker count for data-parallel loops. Reads GINN_THREADS (0 or unset means
// hardware concurrency).
std::size_t WorkerCount();

// Runs body(i) for every i in [0, n), spreading indices over up to
// WorkerCount() threads. Each index is visited exactly once; callers write
// results into pre-sized slots so output order never depends on scheduling.
// The first exception thrown by any body is rethrown after all workers join.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ginn

#endif  // GINN_PARALLEL_H_
