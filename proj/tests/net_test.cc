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

#include "ginn/net.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ginn/error.h"
#include "test_support.h"

namespace ginn {
namespace {

using testing::RandomBatch;
using testing::RandomParams;

TEST(Relu, Branches) {
  EXPECT_EQ(relu(-3.0), 0.0);
  EXPECT_EQ(relu(0.0), 0.0);
  EXPECT_EQ(relu(2.5), 2.5);
}

TEST(InitParams, DeterministicPerSeed) {
  NetworkConfig config;
  config.init_seed = 1;
  EXPECT_EQ(init_params(config), init_params(config));

  NetworkConfig other = config;
  other.init_seed = 2;
  EXPECT_NE(init_params(config), init_params(other));
}

TEST(InitParams, ZeroBiasesAndFanInBounds) {
  for (InitScheme scheme : {InitScheme::kUniformFanIn, InitScheme::kNormalFanIn}) {
    NetworkConfig config;
    config.init_scheme = scheme;
    config.init_seed = 99;
    const NetworkParams params = init_params(config);
    ASSERT_EQ(params.layers.size(), 4u);
    EXPECT_EQ(params.parameter_count(), 2u * 16 + 16 + 2 * (16 * 16 + 16) + 16 * 2 + 2);
    for (const auto& layer : params.layers) {
      for (double b : layer.bias) EXPECT_EQ(b, 0.0);
      if (scheme == InitScheme::kUniformFanIn) {
        const double limit = std::sqrt(3.0 / layer.cols);
        for (double w : layer.weights) EXPECT_LE(std::abs(w), limit);
      }
    }
  }
}

TEST(NetworkConfig, RejectsOutOfRangeShapes) {
  NetworkConfig config;
  config.hidden_layers = 0;
  EXPECT_THROW(config.Validate(), Error);
  config.hidden_layers = 9;
  EXPECT_THROW(config.Validate(), Error);
  config.hidden_layers = 3;
  config.hidden_width = 257;
  EXPECT_THROW(config.Validate(), Error);
}

TEST(Forward, ZeroParamsGiveUniformPrediction) {
  const NetworkParams params = NetworkParams::Zeros(NetworkConfig{});
  const ForwardTrace trace = forward(params, {0.3, 0.9});
  EXPECT_DOUBLE_EQ(trace.log_probs.first, std::log(0.5));
  EXPECT_DOUBLE_EQ(trace.log_probs.second, std::log(0.5));
  EXPECT_EQ(trace.predicted(), Label::kBlack);  // tie goes to black
}

TEST(Forward, SingleUnitArithmetic) {
  NetworkConfig config;
  config.hidden_layers = 1;
  config.hidden_width = 1;
  NetworkParams params = NetworkParams::Zeros(config);
  params.layers[0].weight(0, 0) = 1.0;
  params.layers[0].bias[0] = -0.5;
  const ForwardTrace trace = forward(params, {0.25, 0.8});
  EXPECT_DOUBLE_EQ(trace.preactivations[0][0], -0.25);
  EXPECT_EQ(trace.activations[0][0], 0.0);
}

TEST(Forward, MatchesStraightLineOracle) {
  Rng rng(11, Rng::Stream::kTest);
  for (int c = 0; c < 200; ++c) {
    const NetworkParams params = RandomParams(NetworkConfig{}, rng);
    const Point p{rng.uniform01(), rng.uniform01()};
    const ForwardTrace trace = forward(params, p);
    const auto oracle = testing::OracleLogProbs(params, p);
    EXPECT_NEAR(trace.log_probs.first, oracle.first, 1e-12 * (1 + std::abs(oracle.first)));
    EXPECT_NEAR(trace.log_probs.second, oracle.second, 1e-12 * (1 + std::abs(oracle.second)));
    const auto pre = testing::OraclePreactivations(params, p);
    for (std::size_t l = 0; l < pre.size(); ++l) {
      for (std::size_t i = 0; i < pre[l].size(); ++i) {
        EXPECT_NEAR(trace.preactivations[l][i], pre[l][i], 1e-12 * (1 + std::abs(pre[l][i])));
        EXPECT_EQ(trace.activations[l][i], std::max(0.0, trace.preactivations[l][i]));
      }
    }
  }
}

TEST(Forward, SoftmaxNormalized) {
  Rng rng(12, Rng::Stream::kTest);
  for (int c = 0; c < 500; ++c) {
    const NetworkParams params = RandomParams(NetworkConfig{}, rng, 3.0);
    const ForwardTrace t = forward(params, {rng.uniform(-0.2, 1.2), rng.uniform(-0.2, 1.2)});
    EXPECT_NEAR(std::exp(t.log_probs.first) + std::exp(t.log_probs.second), 1.0, 1e-12);
  }
}

TEST(Forward, FlagsOutsideDomainAndRejectsCorruptParams) {
  NetworkParams params = NetworkParams::Zeros(NetworkConfig{});
  EXPECT_TRUE(forward(params, {1.1, 0.5}).outside_domain);
  EXPECT_FALSE(forward(params, {1.0, 0.0}).outside_domain);
  params.layers[1].weights[3] = std::numeric_limits<double>::quiet_NaN();
  try {
    forward(params, {0.5, 0.5});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCorruptParameters);
    EXPECT_STREQ(e.what(), "corrupt parameters");
  }
}

TEST(LossAndGrad, ZeroParamsGiveLn2) {
  Rng rng(13, Rng::Stream::kTest);
  const auto result = loss_and_grad(NetworkParams::Zeros(NetworkConfig{}), RandomBatch(rng, 17));
  EXPECT_NEAR(result.loss, std::numbers::ln2, 1e-15);
}

TEST(LossAndGrad, EmptyBatchRejected) {
  EXPECT_THROW(loss_and_grad(NetworkParams::Zeros(NetworkConfig{}), {}), Error);
}

TEST(LossAndGrad, LossMatchesOracle) {
  Rng rng(14, Rng::Stream::kTest);
  for (int c = 0; c < 20; ++c) {
    const NetworkParams params = RandomParams(NetworkConfig{}, rng);
    const auto batch = RandomBatch(rng, 32);
    EXPECT_NEAR(loss_and_grad(params, batch).loss, testing::OracleLoss(params, batch), 1e-12);
    EXPECT_NEAR(mean_loss(params, batch), testing::OracleLoss(params, batch), 1e-12);
  }
}

TEST(LossAndGrad, DuplicatedBatchIsIdentical) {
  Rng rng(15, Rng::Stream::kTest);
  const NetworkParams params = RandomParams(NetworkConfig{}, rng);
  const auto batch = RandomBatch(rng, 16);
  auto doubled = batch;
  for (const auto& s : batch) doubled.push_back(s);
  const auto once = loss_and_grad(params, batch);
  const auto twice = loss_and_grad(params, doubled);
  EXPECT_NEAR(once.loss, twice.loss, 1e-14);
  for (std::size_t l = 0; l < once.grads.layers.size(); ++l) {
    for (std::size_t k = 0; k < once.grads.layers[l].weights.size(); ++k) {
      EXPECT_NEAR(once.grads.layers[l].weights[k], twice.grads.layers[l].weights[k], 1e-14);
    }
    for (std::size_t k = 0; k < once.grads.layers[l].bias.size(); ++k) {
      EXPECT_NEAR(once.grads.layers[l].bias[k], twice.grads.layers[l].bias[k], 1e-14);
    }
  }
}

// Smaller sweep than the acceptance criterion; catches regressions quickly.
TEST(LossAndGrad, MatchesCentralDifferences) {
  Rng rng(16, Rng::Stream::kTest);
  NetworkConfig config;
  config.hidden_width = 6;
  for (int c = 0; c < 10; ++c) {
    NetworkParams params = RandomParams(config, rng);
    const auto batch = RandomBatch(rng, 8);
    const auto analytic = loss_and_grad(params, batch);
    const auto base_pattern = testing::ActivationPattern(params, batch);
    for (std::size_t l = 0; l < params.layers.size(); ++l) {
      auto check = [&](std::vector<double>& values, const std::vector<double>& grads) {
        for (std::size_t k = 0; k < values.size(); ++k) {
          const double saved = values[k];
          values[k] = saved + 1e-5;
          const bool kink_plus = testing::ActivationPattern(params, batch) != base_pattern;
          const double up = testing::OracleLoss(params, batch);
          values[k] = saved - 1e-5;
          const bool kink_minus = testing::ActivationPattern(params, batch) != base_pattern;
          const double down = testing::OracleLoss(params, batch);
          values[k] = saved;
          if (kink_plus || kink_minus) continue;
          const double numeric = (up - down) / 2e-5;
          const double scale = std::max({std::abs(numeric), std::abs(grads[k]), 1e-6});
          EXPECT_LT(std::abs(numeric - grads[k]) / scale, 1e-4);
        }
      };
      check(params.layers[l].weights, analytic.grads.layers[l].weights);
      check(params.layers[l].bias, analytic.grads.layers[l].bias);
    }
  }
}

TEST(CosineLr, Endpoints) {
  EXPECT_EQ(cosine_lr(0, 1000, 0.01), 0.01);
  EXPECT_EQ(cosine_lr(1000, 1000, 0.01), 0.0);
  EXPECT_NEAR(cosine_lr(500, 1000, 1e-3), 5e-4, 1e-18);
  EXPECT_THROW(cosine_lr(1001, 1000, 1e-3), Error);
}

TEST(CosineLr, MonotoneNonIncreasing) {
  double prev = cosine_lr(0, 997, 1.0);
  for (int i = 1; i <= 997; ++i) {
    const double lr = cosine_lr(i, 997, 1.0);
    EXPECT_LE(lr, prev);
    prev = lr;
  }
}

// One weight, no inputs: the Adam arithmetic in isolation.
NetworkParams Scalar(double theta) {
  NetworkParams p;
  p.layers.emplace_back(1, 1);
  p.layers[0].weights[0] = theta;
  return p;
}

Gradients ScalarGrad(double g) {
  Gradients grads{{DenseLayer(1, 1)}};
  grads.layers[0].weights[0] = g;
  return grads;
}

TEST(AdamStep, ZeroLearningRateOnlyMovesMoments) {
  NetworkParams params = Scalar(0.7);
  AdamState state = AdamState::ZerosLike(params);
  adam_step(params, ScalarGrad(2.0), state, 0.0);
  EXPECT_EQ(params.layers[0].weights[0], 0.7);
  EXPECT_EQ(state.step, 1);
  EXPECT_NEAR(state.first_moment[0].weights[0], 0.2, 1e-15);
  EXPECT_NEAR(state.second_moment[0].weights[0], 0.004, 1e-15);
}

TEST(AdamStep, FirstStepIsLrOverOnePlusEpsilon) {
  NetworkParams params = Scalar(1.0);
  AdamState state = AdamState::ZerosLike(params);
  adam_step(params, ScalarGrad(1.0), state, 0.001);
  EXPECT_NEAR(params.layers[0].weights[0], 1.0 - 0.001 / (1.0 + 1e-8), 1e-15);
  EXPECT_EQ(params.layers[0].bias[0], 0.0);
}

TEST(AdamStep, DescendsOnSquare) {
  NetworkParams params = Scalar(1.0);
  AdamState state = AdamState::ZerosLike(params);
  double prev = 1.0;
  for (int i = 0; i < 10; ++i) {
    const double theta = params.layers[0].weights[0];
    adam_step(params, ScalarGrad(2.0 * theta), state, 0.01);
    const double now = std::abs(params.layers[0].weights[0]);
    EXPECT_LT(now, prev);
    prev = now;
  }
}

TEST(AdamStep, ShapeMismatchRejected) {
  NetworkParams params = NetworkParams::Zeros(NetworkConfig{});
  AdamState state = AdamState::ZerosLike(params);
  try {
    adam_step(params, ScalarGrad(1.0), state, 0.1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

}  // namespace
}  // namespace ginn
