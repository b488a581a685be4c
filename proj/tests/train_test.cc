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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>

#include "ginn/error.h"
#include "test_support.h"

namespace ginn {
namespace {

TrainingConfig Short(std::int64_t iterations, std::uint64_t seed = 3) {
  TrainingConfig c;
  c.total_iterations = iterations;
  c.data_seed = seed;
  return c;
}

NetworkConfig Net(std::uint64_t seed = 3) {
  NetworkConfig c;
  c.init_seed = seed;
  return c;
}

TEST(Train, ZeroIterationsRecordsInitialSnapshot) {
  const TargetImage target = procedural_bottle(32, 32);
  const RunRecord run = train(Net(), Short(0), target, make_schedule(0, 24));
  ASSERT_EQ(run.snapshots.size(), 1u);
  EXPECT_EQ(run.snapshots[0].iteration, 0);
  EXPECT_EQ(run.snapshots[0].params, init_params(Net()));
  EXPECT_FALSE(run.interrupted);
  EXPECT_DOUBLE_EQ(run.snapshots[0].loss,
                   testing::OracleLoss(run.snapshots[0].params, target.AllPixels()));
}

TEST(Train, SnapshotsFollowScheduleAndLearningRate) {
  const TargetImage target = procedural_bottle(32, 32);
  const SnapshotSchedule schedule = make_schedule(300, 6, ScheduleMode::kUniform);
  const RunRecord run = train(Net(), Short(300), target, schedule);
  ASSERT_EQ(run.snapshots.size(), schedule.iterations.size());
  for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
    const Snapshot& s = run.snapshots[k];
    EXPECT_EQ(s.iteration, schedule.iterations[k]);
    EXPECT_DOUBLE_EQ(s.learning_rate, cosine_lr(s.iteration, 300, 1e-3));
    EXPECT_TRUE(std::isfinite(s.loss));
    EXPECT_TRUE(s.params.all_finite());
  }
  EXPECT_EQ(run.snapshots.back().learning_rate, 0.0);
}

TEST(Train, BitIdenticalAcrossRuns) {
  const TargetImage target = procedural_bottle(32, 32);
  const SnapshotSchedule schedule = make_schedule(500, 5);
  const RunRecord a = train(Net(11), Short(500, 12), target, schedule);
  const RunRecord b = train(Net(11), Short(500, 12), target, schedule);
  EXPECT_EQ(a, b);
  const RunRecord c = train(Net(11), Short(500, 13), target, schedule);
  EXPECT_NE(a.snapshots.back().params, c.snapshots.back().params);
}

// The trailing-window loss at the end must equal the mean of the last 1000
// mini-batch losses, recomputed here by replaying the data stream against the
// recorded parameters of a per-iteration schedule.
TEST(Train, TrailingLossMatchesReplay) {
  const TargetImage target = procedural_bottle(32, 32);
  const std::int64_t total = 40;
  std::vector<std::int64_t> every(total + 1);
  for (std::int64_t k = 0; k <= total; ++k) every[k] = k;
  const RunRecord run =
      train(Net(), Short(total), target, make_explicit_schedule(total, every));
  Rng data(3, Rng::Stream::kData);
  double sum = 0.0;
  for (std::int64_t k = 0; k < total; ++k) {
    const Batch batch = sample_batch(target, data, 128);
    sum += testing::OracleLoss(run.snapshots[k].params, batch);
    EXPECT_NEAR(run.snapshots[k + 1].loss, sum / (k + 1), 1e-12);
  }
}

TEST(Train, LossDecreasesOnShortRun) {
  const TargetImage target = testing::HalfPlaneTarget(16, 16);
  const RunRecord run = train(Net(), Short(3000), target, make_schedule(3000, 4));
  EXPECT_LT(run.snapshots.back().loss, run.snapshots.front().loss);
  EXPECT_GT(run.snapshots.front().loss, 0.5);
}

TEST(Train, DivergenceNamesIteration) {
  TrainingConfig c = Short(50);
  c.base_lr = 1e300;
  try {
    train(Net(), c, procedural_bottle(32, 32), make_schedule(50, 4));
    FAIL() << "expected divergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDivergence);
    EXPECT_NE(std::string(e.what()).find("iteration"), std::string::npos);
  }
}

TEST(Train, StopFlagInterruptsWithPartialSnapshot) {
  std::atomic<bool> stop{false};
  int seen = 0;
  TrainHooks hooks;
  hooks.stop = &stop;
  hooks.on_snapshot = [&](const Snapshot& s) {
    ++seen;
    if (s.iteration >= 10) stop = true;
  };
  const RunRecord run =
      train(Net(), Short(1000), procedural_bottle(32, 32),
            make_explicit_schedule(1000, {0, 10, 500, 1000}), hooks);
  EXPECT_TRUE(run.interrupted);
  ASSERT_EQ(run.snapshots.size(), 2u);
  EXPECT_EQ(run.snapshots.back().iteration, 10);
  EXPECT_EQ(seen, 2);
}

TEST(Train, StopBetweenSnapshotsRecordsCurrentIteration) {
  std::atomic<bool> stop{true};
  TrainHooks hooks;
  hooks.stop = &stop;
  const RunRecord run = train(Net(), Short(1000), procedural_bottle(32, 32),
                              make_schedule(1000, 8), hooks);
  EXPECT_TRUE(run.interrupted);
  ASSERT_EQ(run.snapshots.size(), 2u);
  EXPECT_EQ(run.snapshots.back().iteration, 1);
}

TEST(Train, RejectsBadConfig) {
  const TargetImage target = procedural_bottle(32, 32);
  TrainingConfig c = Short(10);
  c.batch_size = 0;
  EXPECT_THROW(train(Net(), c, target, make_schedule(10, 2)), Error);
  c = Short(10);
  c.base_lr = -1.0;
  EXPECT_THROW(train(Net(), c, target, make_schedule(10, 2)), Error);
  EXPECT_THROW(train(Net(), Short(-1), target, make_schedule(0, 2)), Error);
  EXPECT_THROW(train(Net(), Short(10), target, make_schedule(20, 3)), Error);
}

}  // namespace
}  // namespace ginn
