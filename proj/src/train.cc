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

#include "ginn/train.h"

#include <cmath>
#include <numeric>
#include <string>

#include "ginn/error.h"
#include "ginn/rng.h"

namespace ginn {

void TrainingConfig::Validate() const {
  if (total_iterations < 0) {
    throw Error(ErrorCode::kInvalidArgument, "total_iterations must be >= 0");
  }
  if (batch_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  }
  if (!(base_lr > 0.0) || !std::isfinite(base_lr)) {
    throw Error(ErrorCode::kInvalidArgument, "base_lr must be a positive number");
  }
}

RunRecord train(const NetworkConfig& net_config,
                const TrainingConfig& train_config, const TargetImage& target,
                const SnapshotSchedule& schedule, const TrainHooks& hooks) {
  net_config.Validate();
  train_config.Validate();
  const std::int64_t total = train_config.total_iterations;
  ValidateSchedule(schedule, total);

  RunRecord run{RunRecord::kFormatVersion, net_config, train_config, schedule,
                target, {}, false};
  run.snapshots.reserve(schedule.iterations.size());

  NetworkParams params = init_params(net_config);
  AdamState adam = AdamState::ZerosLike(params);
  Rng data_rng(train_config.data_seed, Rng::Stream::kData);

  std::vector<double> recent(kLossWindow, 0.0);
  std::int64_t recorded = 0;

  auto lr_at = [&](std::int64_t iteration) {
    return total == 0 ? train_config.base_lr
                      : cosine_lr(iteration, total, train_config.base_lr);
  };
  auto take_snapshot = [&](std::int64_t iteration) {
    double loss;
    if (iteration == 0) {
      loss = mean_loss(params, target.AllPixels());
    } else {
      const std::int64_t n = std::min<std::int64_t>(recorded, kLossWindow);
      loss = std::accumulate(recent.begin(), recent.begin() + n, 0.0) /
             static_cast<double>(n);
    }
    run.snapshots.push_back({iteration, lr_at(iteration), loss, params});
    if (hooks.on_snapshot) hooks.on_snapshot(run.snapshots.back());
  };

  take_snapshot(0);
  for (std::int64_t k = 0; k < total; ++k) {
    const Batch batch = sample_batch(target, data_rng, train_config.batch_size);
    LossAndGrad step = loss_and_grad(params, batch);
    if (!std::isfinite(step.loss)) {
      throw Error(ErrorCode::kDivergence,
                  "divergence: non-finite loss at iteration " + std::to_string(k + 1));
    }
    recent[static_cast<std::size_t>(recorded % kLossWindow)] = step.loss;
    ++recorded;

    adam_step(params, step.grads, adam, lr_at(k));
    if (!params.all_finite()) {
      throw Error(ErrorCode::kDivergence,
                  "divergence: non-finite parameters at iteration " + std::to_string(k + 1));
    }

    const std::int64_t iteration = k + 1;
    const bool scheduled = schedule.Contains(iteration);
    if (scheduled) take_snapshot(iteration);
    if (hooks.stop != nullptr && hooks.stop->load(std::memory_order_relaxed) &&
        iteration < total) {
      if (!scheduled) take_snapshot(iteration);
      run.interrupted = true;
      break;
    }
  }
  return run;
}

}  // namespace ginn
