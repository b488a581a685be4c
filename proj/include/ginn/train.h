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

#ifndef GINN_TRAIN_H_
#define GINN_TRAIN_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "ginn/data.h"
#include "ginn/net.h"
#include "ginn/schedule.h"

namespace ginn {

struct TrainingConfig {
  std::int64_t total_iterations = 1'280'000;
  int batch_size = 128;
  double base_lr = 1e-3;
  std::uint64_t data_seed = 0;

  // A zero-length run is allowed and records only the initial snapshot.
  void Validate() const;

  friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

// Mini-batch losses are averaged over this many trailing iterations before
// being stored in a snapshot.
inline constexpr int kLossWindow = 1000;

struct Snapshot {
  std::int64_t iteration = 0;
  // Learning rate for the step that follows this snapshot.
  double learning_rate = 0.0;
  // Mean mini-batch loss over the trailing kLossWindow iterations; for
  // iteration 0, the loss of the initial parameters over every pixel.
  double loss = 0.0;
  NetworkParams params;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct RunRecord {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  NetworkConfig net_config;
  TrainingConfig train_config;
  SnapshotSchedule schedule;
  TargetImage target;
  std::vector<Snapshot> snapshots;
  // Set when training stopped early; the last snapshot is then taken at the
  // stopping iteration and may not be part of the schedule.
  bool interrupted = false;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct TrainHooks {
  // Polled once per iteration; when it becomes true training stops and the
  // record is marked interrupted.
  const std::atomic<bool>* stop = nullptr;
  // Called after each recorded snapshot.
  std::function<void(const Snapshot&)> on_snapshot;
};

// Full loop: sample batch, loss and gradient, cosine learning rate, Adam
// step. Deterministic in (init_seed, data_seed). Throws kDivergence naming the
// iteration when the loss or the parameters stop being finite.
RunRecord train(const NetworkConfig& net_config,
                const TrainingConfig& train_config, const TargetImage& target,
                const SnapshotSchedule& schedule, const TrainHooks& hooks = {});

}  // namespace ginn

#endif  // GINN_TRAIN_H_
