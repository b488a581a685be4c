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

#include "ginn/run_store.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ginn/base64.h"
#include "ginn/error.h"
#include "ginn/image_io.h"
#include "ginn/parallel.h"

namespace ginn {
namespace {

constexpr const char* kRunFormat = "ginn-run";
constexpr const char* kBundleFormat = "ginn-bundle";

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformed, "malformed: " + what);
}

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Malformed(where + " is not an object");
  const auto it = obj.find(key);
  if (it == obj.end()) Malformed(where + "." + key + " is missing");
  return *it;
}

template <typename T>
T Get(const Json& obj, const char* key, const std::string& where) {
  const Json& v = Field(obj, key, where);
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) Malformed(where + "." + key + " is not a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!v.is_number_integer()) Malformed(where + "." + key + " is not an integer");
    }
    return v.get<T>();
  } catch (const Json::exception&) {
    Malformed(where + "." + key + " has the wrong type");
  }
}

std::vector<double> GetDoubles(const Json& obj, const char* key, const std::string& where) {
  const Json& arr = Field(obj, key, where);
  if (!arr.is_array()) Malformed(where + "." + key + " is not an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) {
    if (!v.is_number()) Malformed(where + "." + key + " holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string_view InitSchemeName(InitScheme s) {
  return s == InitScheme::kUniformFanIn ? "uniform-fan-in" : "normal-fan-in";
}

InitScheme ParseInitScheme(const std::string& s) {
  if (s == "uniform-fan-in") return InitScheme::kUniformFanIn;
  if (s == "normal-fan-in") return InitScheme::kNormalFanIn;
  Malformed("unknown init_scheme '" + s + "'");
}

Json NetConfigToJson(const NetworkConfig& c) {
  return {{"input_dim", NetworkConfig::kInputDim},
          {"hidden_layers", c.hidden_layers},
          {"hidden_width", c.hidden_width},
          {"output_dim", NetworkConfig::kOutputDim},
          {"init_scheme", InitSchemeName(c.init_scheme)},
          {"init_seed", c.init_seed}};
}

NetworkConfig NetConfigFromJson(const Json& j) {
  const std::string where = "net_config";
  if (Get<int>(j, "input_dim", where) != NetworkConfig::kInputDim ||
      Get<int>(j, "output_dim", where) != NetworkConfig::kOutputDim) {
    throw Error(ErrorCode::kShapeMismatch, "shape mismatch: network must map 2 inputs to 2 classes");
  }
  NetworkConfig c;
  c.hidden_layers = Get<int>(j, "hidden_layers", where);
  c.hidden_width = Get<int>(j, "hidden_width", where);
  c.init_scheme = ParseInitScheme(Get<std::string>(j, "init_scheme", where));
  c.init_seed = Get<std::uint64_t>(j, "init_seed", where);
  try {
    c.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kShapeMismatch, std::string("shape mismatch: ") + e.what());
  }
  return c;
}

Json TrainConfigToJson(const TrainingConfig& c) {
  return {{"total_iterations", c.total_iterations},
          {"batch_size", c.batch_size},
          {"base_lr", c.base_lr},
          {"data_seed", c.data_seed}};
}

TrainingConfig TrainConfigFromJson(const Json& j) {
  const std::string where = "train_config";
  TrainingConfig c;
  c.total_iterations = Get<std::int64_t>(j, "total_iterations", where);
  c.batch_size = Get<int>(j, "batch_size", where);
  c.base_lr = Get<double>(j, "base_lr", where);
  c.data_seed = Get<std::uint64_t>(j, "data_seed", where);
  try {
    c.Validate();
  } catch (const Error& e) {
    Malformed(std::string("train_config: ") + e.what());
  }
  return c;
}

Json ScheduleToJson(const SnapshotSchedule& s) {
  return {{"mode", ScheduleModeName(s.mode)}, {"iterations", s.iterations}};
}

SnapshotSchedule ScheduleFromJson(const Json& j, std::int64_t total) {
  SnapshotSchedule s;
  try {
    s.mode = ParseScheduleMode(Get<std::string>(j, "mode", "schedule"));
    s.iterations = Get<std::vector<std::int64_t>>(j, "iterations", "schedule");
    ValidateSchedule(s, total);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformed) throw;
    Malformed(std::string("schedule: ") + e.what());
  }
  return s;
}

NetworkParams ParamsFromJson(const Json& j, const NetworkConfig& config,
                             const std::string& where) {
  const Json& layers = Field(j, "layers", where);
  if (!layers.is_array()) Malformed(where + ".layers is not an array");
  NetworkParams params = NetworkParams::Zeros(config);
  if (layers.size() != params.layers.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "shape mismatch: " + where + " has " + std::to_string(layers.size()) +
                    " layers, config implies " + std::to_string(params.layers.size()));
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string lw = where + ".layers[" + std::to_string(l) + "]";
    DenseLayer& dst = params.layers[l];
    const int rows = Get<int>(layers[l], "rows", lw);
    const int cols = Get<int>(layers[l], "cols", lw);
    std::vector<double> weights = GetDoubles(layers[l], "weights", lw);
    std::vector<double> bias = GetDoubles(layers[l], "bias", lw);
    if (rows != dst.rows || cols != dst.cols || weights.size() != dst.weights.size() ||
        bias.size() != dst.bias.size()) {
      throw Error(ErrorCode::kShapeMismatch, "shape mismatch: " + lw);
    }
    dst.weights = std::move(weights);
    dst.bias = std::move(bias);
  }
  if (!params.all_finite()) Malformed(where + " holds non-finite values");
  return params;
}

std::string PackLabels(const TargetImage& t) {
  std::vector<std::uint8_t> bits((t.pixel_count() + 7) / 8, 0);
  for (std::size_t k = 0; k < t.pixel_count(); ++k) {
    if (t.labels()[k] == Label::kWhite) bits[k / 8] |= static_cast<std::uint8_t>(0x80u >> (k % 8));
  }
  return Base64Encode(bits);
}

TargetImage TargetFromJson(const Json& j) {
  const std::string where = "target";
  const int width = Get<int>(j, "width", where);
  const int height = Get<int>(j, "height", where);
  const std::string source = Get<std::string>(j, "source", where);
  if (width < 1 || height < 1) Malformed("target dimensions");
  const auto bits = Base64Decode(Get<std::string>(j, "labels", where));
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (bits.size() != (n + 7) / 8) Malformed("target.labels has the wrong length");
  std::vector<Label> labels(n);
  for (std::size_t k = 0; k < n; ++k) {
    labels[k] = (bits[k / 8] & (0x80u >> (k % 8))) ? Label::kWhite : Label::kBlack;
  }
  try {
    return TargetImage::FromLabels(width, height, std::move(labels),
                                   source == "procedural" ? TargetSource::kProcedural
                                                          : TargetSource::kFile);
  } catch (const Error& e) {
    Malformed(std::string("target: ") + e.what());
  }
}

void CheckVersion(const Json& j, const char* format, int version) {
  if (!j.is_object()) Malformed("document is not a JSON object");
  const auto fmt = j.find("format");
  if (fmt == j.end() || !fmt->is_string() || *fmt != format) {
    Malformed(std::string("format is not '") + format + "'");
  }
  const auto ver = j.find("version");
  if (ver == j.end() || !ver->is_number_integer()) Malformed("version field is missing");
  if (ver->get<std::int64_t>() != version) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "unsupported version " + ver->dump() + " (expected " +
                    std::to_string(version) + ")");
  }
}

double Round6(double v) { return std::round(v * 1e6) / 1e6; }

Json BoundaryToJson(const Boundary& b) {
  Json lines = Json::array();
  for (const Polyline& line : b.polylines) {
    Json flat = Json::array();
    for (const Point& p : line) {
      flat.push_back(Round6(p.x));
      flat.push_back(Round6(p.y));
    }
    lines.push_back(std::move(flat));
  }
  return {{"layer", b.layer}, {"neuron", b.neuron}, {"polylines", std::move(lines)}};
}

Json PointToJson(Point p) { return Json::array({p.x, p.y}); }

}  // namespace

Json ParamsToJson(const NetworkParams& params) {
  Json layers = Json::array();
  for (const DenseLayer& l : params.layers) {
    layers.push_back({{"rows", l.rows}, {"cols", l.cols}, {"weights", l.weights}, {"bias", l.bias}});
  }
  return {{"layers", std::move(layers)}};
}

Json TargetToJson(const TargetImage& target) {
  return {{"width", target.width()},
          {"height", target.height()},
          {"source", target.source() == TargetSource::kProcedural ? "procedural" : "file"},
          {"labels", PackLabels(target)}};
}

Json RunToJson(const RunRecord& run) {
  Json snapshots = Json::array();
  for (const Snapshot& s : run.snapshots) {
    snapshots.push_back({{"iteration", s.iteration},
                         {"learning_rate", s.learning_rate},
                         {"loss", s.loss},
                         {"params", ParamsToJson(s.params)}});
  }
  return {{"format", kRunFormat},
          {"version", run.format_version},
          {"interrupted", run.interrupted},
          {"net_config", NetConfigToJson(run.net_config)},
          {"train_config", TrainConfigToJson(run.train_config)},
          {"schedule", ScheduleToJson(run.schedule)},
          {"target", TargetToJson(run.target)},
          {"snapshots", std::move(snapshots)}};
}

RunRecord RunFromJson(const Json& json) {
  CheckVersion(json, kRunFormat, RunRecord::kFormatVersion);
  const NetworkConfig net = NetConfigFromJson(Field(json, "net_config", "run"));
  const TrainingConfig train = TrainConfigFromJson(Field(json, "train_config", "run"));
  const SnapshotSchedule schedule =
      ScheduleFromJson(Field(json, "schedule", "run"), train.total_iterations);
  const bool interrupted = Get<bool>(json, "interrupted", "run");
  RunRecord run{RunRecord::kFormatVersion, net, train, schedule,
                TargetFromJson(Field(json, "target", "run")), {}, interrupted};

  const Json& snaps = Field(json, "snapshots", "run");
  if (!snaps.is_array()) Malformed("run.snapshots is not an array");
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string where = "snapshots[" + std::to_string(k) + "]";
    Snapshot s;
    s.iteration = Get<std::int64_t>(snaps[k], "iteration", where);
    s.learning_rate = Get<double>(snaps[k], "learning_rate", where);
    s.loss = Get<double>(snaps[k], "loss", where);
    s.params = ParamsFromJson(Field(snaps[k], "params", where), net, where + ".params");
    run.snapshots.push_back(std::move(s));
  }

  // Completed runs have exactly one snapshot per scheduled iteration;
  // interrupted runs hold a prefix of the schedule plus the stopping point.
  const auto& its = schedule.iterations;
  const std::size_t n = run.snapshots.size();
  bool consistent = n >= 1;
  if (!interrupted) {
    consistent = consistent && n == its.size();
  } else {
    consistent = consistent && n <= its.size() + 1;
  }
  for (std::size_t k = 0; consistent && k < n; ++k) {
    const bool last = k + 1 == n;
    if (k < its.size() && run.snapshots[k].iteration == its[k]) continue;
    consistent = interrupted && last &&
                 run.snapshots[k].iteration > (k == 0 ? -1 : run.snapshots[k - 1].iteration);
  }
  if (!consistent) {
    throw Error(ErrorCode::kShapeMismatch, "shape mismatch: snapshots do not follow the schedule");
  }
  return run;
}

void save_run(const RunRecord& run, const std::filesystem::path& path) {
  const std::string text = RunToJson(run).dump() + "\n";
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

RunRecord load_run(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  Json json;
  try {
    json = Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    Malformed(path.string() + ": " + e.what());
  }
  return RunFromJson(json);
}

Json ToJson(const ShiftReport& r) {
  Json neurons = Json::array();
  for (const NeuronShift& n : r.neurons) {
    neurons.push_back({{"neuron", n.neuron},
                       {"degenerate", n.degenerate},
                       {"delta_angle", n.delta_angle},
                       {"delta_offset", n.delta_offset}});
  }
  const auto ratio = r.offset_to_angle_ratio();
  return {{"layer", r.layer},
          {"neurons", std::move(neurons)},
          {"mean_abs_delta_angle", r.mean_abs_delta_angle},
          {"mean_abs_delta_offset", r.mean_abs_delta_offset},
          {"offset_to_angle_ratio", ratio ? Json(*ratio) : Json(nullptr)}};
}

Json ToJson(const CopycatReport& r) {
  Json pairs = Json::array();
  for (const NeuronPair& p : r.pairs) {
    pairs.push_back({{"layer", p.layer}, {"first", p.first}, {"second", p.second},
                     {"similarity", p.similarity}});
  }
  return {{"threshold", r.threshold}, {"pairs", std::move(pairs)}};
}

Json ToJson(const FlipReport& r) {
  Json neurons = Json::array();
  for (const NeuronFlip& n : r.neurons) {
    neurons.push_back({{"layer", n.layer}, {"neuron", n.neuron}, {"distance", n.distance}});
  }
  return {{"loss_delta", r.loss_delta}, {"neurons", std::move(neurons)}};
}

Json ToJson(const SymmetryReport& r) {
  return {{"prediction_mirror_error", r.prediction_mirror_error},
          {"layer_mirror_distance", r.layer_mirror_distance}};
}

Json ToJson(const CornerReport& r) {
  Json corners = Json::array();
  for (const CornerDistances& c : r.corners) {
    corners.push_back({{"corner", PointToJson(c.corner)}, {"per_layer", c.per_layer}});
  }
  return {{"mean_distance", r.mean_distance}, {"corners", std::move(corners)}};
}

std::vector<std::uint8_t> QuantizedHeatmap(const NetworkParams& params, int resolution) {
  const Heatmap h = heatmap(params, resolution, BackgroundMode::kLogProbWhite);
  std::vector<std::uint8_t> out(h.intensity.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = static_cast<std::uint8_t>(std::lround(std::clamp(h.intensity[k], 0.0, 1.0) * 255.0));
  }
  return out;
}

ViewerBundle export_bundle(const RunRecord& run, const GridSpec& grid,
                           const FrameSpec& frame_spec) {
  grid.Validate();
  frame_spec.Validate();
  ViewerBundle bundle{run.net_config, run.train_config, run.schedule, run.interrupted,
                      run.target, grid, frame_spec.palette, critical_points(run.target), {}};
  bundle.snapshots.resize(run.snapshots.size());

  ParallelFor(run.snapshots.size(), [&](std::size_t k) {
    const Snapshot& snap = run.snapshots[k];
    BundleSnapshot& out = bundle.snapshots[k];
    out.snapshot = snap;
    out.boundaries = extract_all_boundaries(snap.params, grid);
    out.heatmap = QuantizedHeatmap(snap.params, kBundleHeatmapResolution);
    out.accuracy = pixel_accuracy(snap.params, run.target);
    if (k > 0) out.shift = bias_weight_shift(run.snapshots[k - 1].params, snap.params);
    out.copycats = detect_copycats(snap.params, grid);
    out.symmetry = symmetry_score(snap.params, out.boundaries, grid);
    if (!bundle.corners.empty()) out.corners = corner_proximity(out.boundaries, bundle.corners);
  });
  return bundle;
}

Json BundleToJson(const ViewerBundle& bundle) {
  Json palette = Json::array();
  for (const Rgb& c : bundle.palette) palette.push_back({c[0], c[1], c[2]});
  Json corners = Json::array();
  for (const Point& p : bundle.corners) corners.push_back(PointToJson(p));

  Json snapshots = Json::array();
  for (const BundleSnapshot& s : bundle.snapshots) {
    Json boundaries = Json::array();
    for (const Boundary& b : s.boundaries.boundaries) boundaries.push_back(BoundaryToJson(b));
    snapshots.push_back(
        {{"iteration", s.snapshot.iteration},
         {"learning_rate", s.snapshot.learning_rate},
         {"loss", s.snapshot.loss},
         {"params", ParamsToJson(s.snapshot.params)},
         {"boundaries", std::move(boundaries)},
         {"heatmap", Base64Encode(s.heatmap)},
         {"metrics",
          {{"accuracy", s.accuracy},
           {"shift", s.shift ? ToJson(*s.shift) : Json(nullptr)},
           {"copycat", ToJson(s.copycats)},
           {"symmetry", ToJson(s.symmetry)},
           {"corners", bundle.corners.empty() ? Json(nullptr) : ToJson(s.corners)}}}});
  }

  return {{"format", kBundleFormat},
          {"version", kBundleFormatVersion},
          {"run",
           {{"net_config", NetConfigToJson(bundle.net_config)},
            {"train_config", TrainConfigToJson(bundle.train_config)},
            {"schedule", ScheduleToJson(bundle.schedule)},
            {"interrupted", bundle.interrupted}}},
          {"grid_resolution", bundle.grid.resolution},
          {"heatmap_resolution", kBundleHeatmapResolution},
          {"heatmap_encoding", "log-prob-white-u8"},
          {"palette", std::move(palette)},
          {"target", TargetToJson(bundle.target)},
          {"corners", std::move(corners)},
          {"snapshots", std::move(snapshots)}};
}

void ValidateBundleJson(const Json& json) {
  CheckVersion(json, kBundleFormat, kBundleFormatVersion);
  const Json& run = Field(json, "run", "bundle");
  const NetworkConfig net = NetConfigFromJson(Field(run, "net_config", "run"));
  const TrainingConfig train = TrainConfigFromJson(Field(run, "train_config", "run"));
  ScheduleFromJson(Field(run, "schedule", "run"), train.total_iterations);
  Get<bool>(run, "interrupted", "run");
  TargetFromJson(Field(json, "target", "bundle"));

  const int grid = Get<int>(json, "grid_resolution", "bundle");
  if (grid < GridSpec::kMinResolution) Malformed("bundle.grid_resolution too small");
  const int heat = Get<int>(json, "heatmap_resolution", "bundle");
  if (heat < 1) Malformed("bundle.heatmap_resolution must be positive");
  if (Get<std::string>(json, "heatmap_encoding", "bundle") != "log-prob-white-u8") {
    Malformed("bundle.heatmap_encoding is unknown");
  }
  const Json& palette = Field(json, "palette", "bundle");
  if (!palette.is_array() || palette.empty()) Malformed("bundle.palette must be a non-empty array");
  for (const Json& c : palette) {
    if (!c.is_array() || c.size() != 3) Malformed("bundle.palette entries must be [r, g, b]");
    for (const Json& v : c) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 255) {
        Malformed("bundle.palette channel outside 0..255");
      }
    }
  }
  const Json& corners = Field(json, "corners", "bundle");
  if (!corners.is_array()) Malformed("bundle.corners is not an array");
  for (const Json& c : corners) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      Malformed("bundle.corners entries must be [x, y]");
    }
  }

  const Json& snaps = Field(json, "snapshots", "bundle");
  if (!snaps.is_array() || snaps.empty()) Malformed("bundle.snapshots must be a non-empty array");
  const std::size_t neurons = static_cast<std::size_t>(net.hidden_layers) * net.hidden_width;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string where = "snapshots[" + std::to_string(k) + "]";
    const Json& s = snaps[k];
    Get<std::int64_t>(s, "iteration", where);
    Get<double>(s, "learning_rate", where);
    Get<double>(s, "loss", where);
    ParamsFromJson(Field(s, "params", where), net, where + ".params");

    const Json& bounds = Field(s, "boundaries", where);
    if (!bounds.is_array() || bounds.size() != neurons) {
      Malformed(where + ".boundaries must hold one entry per hidden neuron");
    }
    for (std::size_t b = 0; b < bounds.size(); ++b) {
      const std::string bw = where + ".boundaries[" + std::to_string(b) + "]";
      const int layer = Get<int>(bounds[b], "layer", bw);
      const int neuron = Get<int>(bounds[b], "neuron", bw);
      if (layer != static_cast<int>(b) / net.hidden_width + 1 ||
          neuron != static_cast<int>(b) % net.hidden_width) {
        Malformed(bw + " is out of (layer, neuron) order");
      }
      const Json& lines = Field(bounds[b], "polylines", bw);
      if (!lines.is_array()) Malformed(bw + ".polylines is not an array");
      for (const Json& line : lines) {
        if (!line.is_array() || line.size() < 4 || line.size() % 2 != 0) {
          Malformed(bw + ".polylines entries need >= 2 (x, y) pairs");
        }
        for (const Json& v : line) {
          if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
            Malformed(bw + " has a vertex outside the unit square");
          }
        }
      }
    }
    std::vector<std::uint8_t> texels;
    try {
      texels = Base64Decode(Get<std::string>(s, "heatmap", where));
    } catch (const Error&) {
      Malformed(where + ".heatmap is not valid base64");
    }
    if (texels.size() != static_cast<std::size_t>(heat) * heat) {
      Malformed(where + ".heatmap has the wrong size");
    }
    const Json& metrics = Field(s, "metrics", where);
    const double acc = Get<double>(metrics, "accuracy", where + ".metrics");
    if (acc < 0.0 || acc > 1.0) Malformed(where + ".metrics.accuracy outside [0, 1]");
    for (const char* key : {"shift", "copycat", "symmetry", "corners"}) {
      const Json& m = Field(metrics, key, where + ".metrics");
      if (!m.is_null() && !m.is_object()) Malformed(where + ".metrics." + key + " is not an object");
    }
  }
}

}  // namespace ginn
