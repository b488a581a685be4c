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

#ifndef GINN_NET_H_
#define GINN_NET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ginn/geometry_types.h"

namespace ginn {

enum class InitScheme { kUniformFanIn, kNormalFanIn };

enum class Label : std::uint8_t { kBlack = 0, kWhite = 1 };

struct NetworkConfig {
  static constexpr int kInputDim = 2;
  static constexpr int kOutputDim = 2;
  static constexpr int kMaxHiddenLayers = 8;
  static constexpr int kMaxHiddenWidth = 256;

  int hidden_layers = 3;
  int hidden_width = 16;
  InitScheme init_scheme = InitScheme::kUniformFanIn;
  std::uint64_t init_seed = 0;

  // Throws kInvalidArgument when the shape is outside the supported range.
  void Validate() const;

  // Total number of affine layers, hidden plus output.
  int num_layers() const { return hidden_layers + 1; }
  int fan_in(int layer) const { return layer == 0 ? kInputDim : hidden_width; }
  int fan_out(int layer) const {
    return layer == hidden_layers ? kOutputDim : hidden_width;
  }

  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

// One affine map. Weights are row-major: rows are output neurons, columns are
// inputs, so weight(r, c) multiplies input c into neuron r.
struct DenseLayer {
  int rows = 0;
  int cols = 0;
  std::vector<double> weights;
  std::vector<double> bias;

  DenseLayer() = default;
  DenseLayer(int rows, int cols)
      : rows(rows),
        cols(cols),
        weights(static_cast<std::size_t>(rows) * cols, 0.0),
        bias(static_cast<std::size_t>(rows), 0.0) {}

  double& weight(int r, int c) { return weights[static_cast<std::size_t>(r) * cols + c]; }
  double weight(int r, int c) const { return weights[static_cast<std::size_t>(r) * cols + c]; }
  std::span<const double> row(int r) const {
    return {weights.data() + static_cast<std::size_t>(r) * cols,
            static_cast<std::size_t>(cols)};
  }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// All weights and biases. layers[0..hidden_layers-1] are the hidden layers,
// layers.back() is the output head producing the (black, white) logits.
struct NetworkParams {
  std::vector<DenseLayer> layers;

  // Zero-filled parameters shaped for `config`.
  static NetworkParams Zeros(const NetworkConfig& config);

  int hidden_layers() const { return static_cast<int>(layers.size()) - 1; }
  int hidden_width() const { return layers.empty() ? 0 : layers.front().rows; }
  std::size_t parameter_count() const;
  bool all_finite() const;
  bool same_shape(const NetworkParams& other) const;

  friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

// dL/dparams with the same layout as NetworkParams, averaged over a batch.
struct Gradients {
  std::vector<DenseLayer> layers;

  static Gradients ZerosLike(const NetworkParams& params);
  friend bool operator==(const Gradients&, const Gradients&) = default;
};

struct ForwardTrace {
  Point input;
  bool outside_domain = false;  // input left [0,1]^2; evaluated anyway
  std::vector<std::vector<double>> preactivations;  // one per hidden layer
  std::vector<std::vector<double>> activations;     // relu(preactivations)
  std::pair<double, double> logits;                  // (black, white)
  std::pair<double, double> log_probs;               // log-softmax of logits

  double log_prob_white() const { return log_probs.second; }
  // Exactly equal logits resolve to black.
  Label predicted() const {
    return logits.second > logits.first ? Label::kWhite : Label::kBlack;
  }
};

struct LabeledPoint {
  Point point;
  Label label = Label::kBlack;
};

struct AdamState {
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  std::vector<DenseLayer> first_moment;
  std::vector<DenseLayer> second_moment;
  std::int64_t step = 0;

  static AdamState ZerosLike(const NetworkParams& params);
};

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

NetworkParams init_params(const NetworkConfig& config);

// Throws kCorruptParameters if any parameter is NaN or infinite.
ForwardTrace forward(const NetworkParams& params, Point p);

// Repeated forward passes over one parameter set. Parameters are validated
// once at construction and the trace buffers are reused between calls, so
// this is the fast path for grid sweeps. Not thread-safe; use one per thread.
class NetworkEvaluator {
 public:
  // Throws kCorruptParameters if any parameter is NaN or infinite.
  explicit NetworkEvaluator(const NetworkParams& params);

  const ForwardTrace& Run(Point p);

 private:
  const NetworkParams& params_;
  ForwardTrace trace_;
};

// Just the two log-probabilities, without keeping the per-layer trace.
std::pair<double, double> log_probs(const NetworkParams& params, Point p);

struct LossAndGrad {
  double loss = 0.0;
  Gradients grads;
};

// Mean negative log-likelihood over `batch` and its exact gradient. The ReLU
// derivative at exactly zero is taken as 0. Throws on an empty batch.
LossAndGrad loss_and_grad(const NetworkParams& params,
                          std::span<const LabeledPoint> batch);

// Loss only; same definition as loss_and_grad.
double mean_loss(const NetworkParams& params,
                 std::span<const LabeledPoint> batch);

// eta0 * (1 + cos(pi * iter / total)) / 2. Throws if iter > total.
double cosine_lr(std::int64_t iter, std::int64_t total, double base_lr);

// One bias-corrected Adam update. `state.step` is incremented. Throws
// kShapeMismatch if grads/state do not match params, kInvalidArgument on a
// negative learning rate.
void adam_step(NetworkParams& params, const Gradients& grads, AdamState& state,
               double lr);

}  // namespace ginn

#endif  // GINN_NET_H_
