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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ginn/error.h"
#include "ginn/rng.h"

namespace ginn {
namespace {

bool AllFinite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

void RequireFinite(const NetworkParams& params) {
  if (!params.all_finite()) {
    throw Error(ErrorCode::kCorruptParameters, "corrupt parameters");
  }
}

// Numerically stable two-class log-softmax.
std::pair<double, double> LogSoftmax(double black, double white) {
  const double hi = std::max(black, white);
  const double lse = hi + std::log1p(std::exp(-std::abs(black - white)));
  return {black - lse, white - lse};
}

// out = layer * in (+ bias). `out` must have layer.rows entries.
void Affine(const DenseLayer& layer, std::span<const double> in,
            std::span<double> out) {
  for (int r = 0; r < layer.rows; ++r) {
    const double* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
    double acc = layer.bias[r];
    for (int c = 0; c < layer.cols; ++c) acc += w[c] * in[c];
    out[r] = acc;
  }
}

bool SameShape(const std::vector<DenseLayer>& a, const std::vector<DenseLayer>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows != b[i].rows || a[i].cols != b[i].cols ||
        a[i].weights.size() != b[i].weights.size() ||
        a[i].bias.size() != b[i].bias.size()) {
      return false;
    }
  }
  return true;
}

std::vector<DenseLayer> ZeroLayersLike(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> out;
  out.reserve(layers.size());
  for (const auto& l : layers) out.emplace_back(l.rows, l.cols);
  return out;
}

// Scratch space for one sample's forward/backward pass.
struct Workspace {
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> a;
  std::vector<double> delta;
  std::vector<double> delta_prev;

  explicit Workspace(const NetworkParams& params) {
    const int hidden = params.hidden_layers();
    z.resize(hidden);
    a.resize(hidden);
    for (int l = 0; l < hidden; ++l) {
      z[l].resize(params.layers[l].rows);
      a[l].resize(params.layers[l].rows);
    }
    delta.resize(params.hidden_width() > 2 ? params.hidden_width() : 2);
    delta_prev.resize(delta.size());
  }
};

// Forward pass into the workspace; returns the logits.
std::pair<double, double> ForwardInto(const NetworkParams& params, Point p,
                                      Workspace& ws) {
  const double input[2] = {p.x, p.y};
  std::span<const double> in(input, 2);
  const int hidden = params.hidden_layers();
  for (int l = 0; l < hidden; ++l) {
    Affine(params.layers[l], in, ws.z[l]);
    for (std::size_t i = 0; i < ws.z[l].size(); ++i) ws.a[l][i] = relu(ws.z[l][i]);
    in = ws.a[l];
  }
  double logits[2];
  Affine(params.layers.back(), in, std::span<double>(logits, 2));
  return {logits[0], logits[1]};
}

}  // namespace

void NetworkConfig::Validate() const {
  if (hidden_layers < 1 || hidden_layers > kMaxHiddenLayers) {
    throw Error(ErrorCode::kInvalidArgument,
                "hidden_layers must be in [1, " + std::to_string(kMaxHiddenLayers) + "]");
  }
  if (hidden_width < 1 || hidden_width > kMaxHiddenWidth) {
    throw Error(ErrorCode::kInvalidArgument,
                "hidden_width must be in [1, " + std::to_string(kMaxHiddenWidth) + "]");
  }
}

NetworkParams NetworkParams::Zeros(const NetworkConfig& config) {
  config.Validate();
  NetworkParams params;
  for (int l = 0; l < config.num_layers(); ++l) {
    params.layers.emplace_back(config.fan_out(l), config.fan_in(l));
  }
  return params;
}

std::size_t NetworkParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.bias.size();
  return n;
}

bool NetworkParams::all_finite() const {
  return std::all_of(layers.begin(), layers.end(), [](const DenseLayer& l) {
    return AllFinite(l.weights) && AllFinite(l.bias);
  });
}

bool NetworkParams::same_shape(const NetworkParams& other) const {
  return SameShape(layers, other.layers);
}

Gradients Gradients::ZerosLike(const NetworkParams& params) {
  return Gradients{ZeroLayersLike(params.layers)};
}

AdamState AdamState::ZerosLike(const NetworkParams& params) {
  AdamState state;
  state.first_moment = ZeroLayersLike(params.layers);
  state.second_moment = ZeroLayersLike(params.layers);
  return state;
}

NetworkParams init_params(const NetworkConfig& config) {
  NetworkParams params = NetworkParams::Zeros(config);
  Rng rng(config.init_seed, Rng::Stream::kInit);
  for (auto& layer : params.layers) {
    const double fan_in = static_cast<double>(layer.cols);
    switch (config.init_scheme) {
      case InitScheme::kUniformFanIn: {
        const double limit = std::sqrt(3.0 / fan_in);
        for (double& w : layer.weights) w = rng.uniform(-limit, limit);
        break;
      }
      case InitScheme::kNormalFanIn: {
        const double scale = 1.0 / std::sqrt(fan_in);
        for (double& w : layer.weights) w = scale * rng.normal();
        break;
      }
    }
  }
  return params;
}

ForwardTrace forward(const NetworkParams& params, Point p) {
  RequireFinite(params);
  Workspace ws(params);
  ForwardTrace trace;
  trace.input = p;
  trace.outside_domain = !InUnitSquare(p);
  trace.logits = ForwardInto(params, p, ws);
  trace.log_probs = LogSoftmax(trace.logits.first, trace.logits.second);
  trace.preactivations = std::move(ws.z);
  trace.activations = std::move(ws.a);
  return trace;
}

NetworkEvaluator::NetworkEvaluator(const NetworkParams& params) : params_(params) {
  RequireFinite(params);
  const int hidden = params.hidden_layers();
  trace_.preactivations.resize(hidden);
  trace_.activations.resize(hidden);
  for (int l = 0; l < hidden; ++l) {
    trace_.preactivations[l].resize(params.layers[l].rows);
    trace_.activations[l].resize(params.layers[l].rows);
  }
}

const ForwardTrace& NetworkEvaluator::Run(Point p) {
  trace_.input = p;
  trace_.outside_domain = !InUnitSquare(p);
  const double input[2] = {p.x, p.y};
  std::span<const double> in(input, 2);
  const int hidden = params_.hidden_layers();
  for (int l = 0; l < hidden; ++l) {
    auto& z = trace_.preactivations[l];
    auto& a = trace_.activations[l];
    Affine(params_.layers[l], in, z);
    for (std::size_t i = 0; i < z.size(); ++i) a[i] = relu(z[i]);
    in = a;
  }
  double logits[2];
  Affine(params_.layers.back(), in, std::span<double>(logits, 2));
  trace_.logits = {logits[0], logits[1]};
  trace_.log_probs = LogSoftmax(logits[0], logits[1]);
  return trace_;
}

std::pair<double, double> log_probs(const NetworkParams& params, Point p) {
  RequireFinite(params);
  Workspace ws(params);
  const auto logits = ForwardInto(params, p, ws);
  return LogSoftmax(logits.first, logits.second);
}

LossAndGrad loss_and_grad(const NetworkParams& params,
                          std::span<const LabeledPoint> batch) {
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "loss_and_grad: empty batch");
  }
  RequireFinite(params);

  LossAndGrad out{0.0, Gradients::ZerosLike(params)};
  Workspace ws(params);
  const int hidden = params.hidden_layers();
  const double scale = 1.0 / static_cast<double>(batch.size());

  for (const LabeledPoint& sample : batch) {
    const auto [black, white] = ForwardInto(params, sample.point, ws);
    const auto [lp_black, lp_white] = LogSoftmax(black, white);
    const bool is_white = sample.label == Label::kWhite;
    out.loss -= is_white ? lp_white : lp_black;

    // d(-log p_y)/d logits = softmax - onehot(y), averaged over the batch.
    ws.delta[0] = (std::exp(lp_black) - (is_white ? 0.0 : 1.0)) * scale;
    ws.delta[1] = (std::exp(lp_white) - (is_white ? 1.0 : 0.0)) * scale;

    for (int l = hidden; l >= 0; --l) {
      const DenseLayer& layer = params.layers[l];
      DenseLayer& grad = out.grads.layers[l];
      const double xy[2] = {sample.point.x, sample.point.y};
      const double* in = l == 0 ? xy : ws.a[l - 1].data();

      for (int r = 0; r < layer.rows; ++r) {
        const double d = ws.delta[r];
        if (d == 0.0) continue;
        grad.bias[r] += d;
        double* g = grad.weights.data() + static_cast<std::size_t>(r) * layer.cols;
        for (int c = 0; c < layer.cols; ++c) g[c] += d * in[c];
      }
      if (l == 0) break;

      // Propagate through W and the ReLU of layer l-1.
      const std::vector<double>& z_prev = ws.z[l - 1];
      for (int c = 0; c < layer.cols; ++c) ws.delta_prev[c] = 0.0;
      for (int r = 0; r < layer.rows; ++r) {
        const double d = ws.delta[r];
        if (d == 0.0) continue;
        const double* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
        for (int c = 0; c < layer.cols; ++c) ws.delta_prev[c] += w[c] * d;
      }
      for (int c = 0; c < layer.cols; ++c) {
        ws.delta[c] = z_prev[c] > 0.0 ? ws.delta_prev[c] : 0.0;
      }
    }
  }
  out.loss *= scale;
  return out;
}

double mean_loss(const NetworkParams& params,
                 std::span<const LabeledPoint> batch) {
  if (batch.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "mean_loss: empty batch");
  }
  RequireFinite(params);
  Workspace ws(params);
  double total = 0.0;
  for (const LabeledPoint& sample : batch) {
    const auto [black, white] = ForwardInto(params, sample.point, ws);
    const auto [lp_black, lp_white] = LogSoftmax(black, white);
    total -= sample.label == Label::kWhite ? lp_white : lp_black;
  }
  return total / static_cast<double>(batch.size());
}

double cosine_lr(std::int64_t iter, std::int64_t total, double base_lr) {
  if (total < 1 || iter < 0 || iter > total) {
    throw Error(ErrorCode::kInvalidArgument,
                "cosine_lr: iteration " + std::to_string(iter) +
                    " outside [0, " + std::to_string(total) + "]");
  }
  if (iter == total) return 0.0;
  const double phase = std::numbers::pi * static_cast<double>(iter) /
                       static_cast<double>(total);
  return base_lr * (1.0 + std::cos(phase)) / 2.0;
}

void adam_step(NetworkParams& params, const Gradients& grads, AdamState& state,
               double lr) {
  if (!SameShape(params.layers, grads.layers) ||
      !SameShape(params.layers, state.first_moment) ||
      !SameShape(params.layers, state.second_moment)) {
    throw Error(ErrorCode::kShapeMismatch, "adam_step: shape mismatch");
  }
  if (!(lr >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "adam_step: negative learning rate");
  }

  state.step += 1;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(AdamState::kBeta1, t);
  const double correction2 = 1.0 - std::pow(AdamState::kBeta2, t);

  auto update = [&](std::vector<double>& theta, const std::vector<double>& g,
                    std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = AdamState::kBeta1 * m[i] + (1.0 - AdamState::kBeta1) * g[i];
      v[i] = AdamState::kBeta2 * v[i] + (1.0 - AdamState::kBeta2) * g[i] * g[i];
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      theta[i] -= lr * m_hat / (std::sqrt(v_hat) + AdamState::kEpsilon);
    }
  };

  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    update(params.layers[l].weights, grads.layers[l].weights,
           state.first_moment[l].weights, state.second_moment[l].weights);
    update(params.layers[l].bias, grads.layers[l].bias,
           state.first_moment[l].bias, state.second_moment[l].bias);
  }
}

}  // namespace ginn
