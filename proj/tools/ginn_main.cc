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

// Command-line front end: train, render, analyze, export-bundle, make-target.
//
// Machine-readable results go to stdout as one JSON line; diagnostics go to
// stderr. Exit codes: 0 success, 1 usage, 2 IO, 3 numeric failure,
// 130 interrupted (partial run file written).

#include <atomic>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "ginn/boundary.h"
#include "ginn/data.h"
#include "ginn/error.h"
#include "ginn/image_io.h"
#include "ginn/metrics.h"
#include "ginn/render.h"
#include "ginn/run_store.h"
#include "ginn/train.h"

namespace {

namespace fs = std::filesystem;
using ginn::ErrorCode;
using ginn::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_interrupted{false};

extern "C" void OnSigint(int) { g_interrupted.store(true); }

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDegenerateTarget:
    case ErrorCode::kDegenerateNeuron:
      return kExitUsage;
    case ErrorCode::kDivergence:
    case ErrorCode::kCorruptParameters:
      return kExitNumeric;
    case ErrorCode::kDecode:
    case ErrorCode::kIo:
    case ErrorCode::kMalformed:
    case ErrorCode::kUnsupportedVersion:
    case ErrorCode::kShapeMismatch:
      return kExitIo;
  }
  return kExitIo;
}

struct Size2 {
  int width = 0;
  int height = 0;
};

Size2 ParseSize(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    Size2 s{std::stoi(text.substr(0, x), &used), 0};
    if (used != x) throw std::invalid_argument(text);
    const std::string rest = text.substr(x + 1);
    s.height = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    return s;
  } catch (const std::exception&) {
    throw ginn::Error(ErrorCode::kInvalidArgument,
                      "expected WIDTHxHEIGHT, got '" + text + "'");
  }
}

void RefuseOverwrite(const fs::path& path, bool force) {
  if (!force && fs::exists(path)) {
    throw ginn::Error(ErrorCode::kIo,
                      "refusing to overwrite " + path.string() + " (use --force)");
  }
}

void PrintJson(const Json& j) { std::cout << j.dump() << std::endl; }

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string image;
  std::string procedural;
  std::int64_t iters = 1'280'000;
  int batch = 128;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> data_seed;
  int snapshots = 24;
  std::string schedule = "log-spaced";
  std::string out;
  bool force = false;
};

ginn::TargetImage LoadTargetArg(const std::string& image, const std::string& procedural) {
  if (!procedural.empty()) {
    const Size2 s = ParseSize(procedural);
    return ginn::procedural_bottle(s.width, s.height);
  }
  return ginn::load_target(ginn::ReadFileBytes(image));
}

int RunTrain(const TrainArgs& a) {
  const fs::path out(a.out);
  RefuseOverwrite(out, a.force);
  const ginn::TargetImage target = LoadTargetArg(a.image, a.procedural);

  ginn::NetworkConfig net;
  net.init_seed = a.seed;
  ginn::TrainingConfig cfg;
  cfg.total_iterations = a.iters;
  cfg.batch_size = a.batch;
  cfg.base_lr = a.lr;
  cfg.data_seed = a.data_seed.value_or(a.seed);
  cfg.Validate();

  const ginn::ScheduleMode mode = ginn::ParseScheduleMode(a.schedule);
  if (mode == ginn::ScheduleMode::kExplicit) {
    throw ginn::Error(ErrorCode::kInvalidArgument,
                      "--schedule explicit is only available through the library");
  }
  const int count = static_cast<int>(
      std::min<std::int64_t>(a.snapshots, cfg.total_iterations + 1));
  const ginn::SnapshotSchedule schedule =
      ginn::make_schedule(cfg.total_iterations, count, mode);

  std::signal(SIGINT, OnSigint);
  ginn::TrainHooks hooks;
  hooks.stop = &g_interrupted;
  hooks.on_snapshot = [](const ginn::Snapshot& s) {
    std::cerr << "snapshot iter=" << s.iteration << " loss=" << s.loss
              << " lr=" << s.learning_rate << "\n";
  };
  const ginn::RunRecord run = ginn::train(net, cfg, target, schedule, hooks);
  std::signal(SIGINT, SIG_DFL);

  ginn::save_run(run, out);
  const ginn::Snapshot& last = run.snapshots.back();
  PrintJson({{"out", out.string()},
             {"iterations", last.iteration},
             {"snapshots", run.snapshots.size()},
             {"final_accuracy", ginn::pixel_accuracy(last.params, run.target)},
             {"final_loss", last.loss},
             {"interrupted", run.interrupted}});
  return run.interrupted ? kExitInterrupted : kExitOk;
}

// ---- render ----------------------------------------------------------------

int RunRender(const std::string& run_path, const std::string& out_dir, int res,
              int grid, bool force) {
  const ginn::RunRecord run = ginn::load_run(run_path);
  const fs::path dir(out_dir);
  RefuseOverwrite(dir / ginn::FrameFileName(1), force);
  ginn::FrameSpec spec;
  spec.resolution = res;
  const auto paths = ginn::render_run(run, ginn::GridSpec{grid}, spec, dir);
  PrintJson({{"out_dir", dir.string()}, {"frames", paths.size()}});
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

Json Analyze(const ginn::RunRecord& run, const std::string& metric,
             const ginn::GridSpec& grid) {
  const auto& snaps = run.snapshots;
  const ginn::Snapshot& last = snaps.back();
  Json out{{"metric", metric}};

  if (metric == "bias-weight") {
    Json intervals = Json::array();
    for (std::size_t k = 1; k < snaps.size(); ++k) {
      intervals.push_back({{"from", snaps[k - 1].iteration},
                           {"to", snaps[k].iteration},
                           {"report", ToJson(ginn::bias_weight_shift(snaps[k - 1].params,
                                                                     snaps[k].params))}});
    }
    out["intervals"] = std::move(intervals);
  } else if (metric == "copycat") {
    out["iteration"] = last.iteration;
    out["report"] = ToJson(ginn::detect_copycats(last.params, grid));
  } else if (metric == "flip") {
    if (snaps.size() < 2) {
      throw ginn::Error(ErrorCode::kInvalidArgument, "flip needs at least two snapshots");
    }
    const ginn::Snapshot& prev = snaps[snaps.size() - 2];
    out["from"] = prev.iteration;
    out["to"] = last.iteration;
    out["report"] = ToJson(ginn::boundary_flip(
        ginn::extract_all_boundaries(prev.params, grid),
        ginn::extract_all_boundaries(last.params, grid), {prev.loss, last.loss}));
  } else if (metric == "symmetry") {
    out["iteration"] = last.iteration;
    out["report"] = ToJson(ginn::symmetry_score(last.params, grid));
  } else if (metric == "corners") {
    const auto corners = ginn::critical_points(run.target);
    Json pts = Json::array();
    for (const auto& c : corners) pts.push_back({c.x, c.y});
    out["corners"] = std::move(pts);
    out["initial"] = ToJson(ginn::corner_proximity(
        ginn::extract_all_boundaries(snaps.front().params, grid), corners));
    out["final"] = ToJson(ginn::corner_proximity(
        ginn::extract_all_boundaries(last.params, grid), corners));
  } else if (metric == "accuracy") {
    out["iteration"] = last.iteration;
    out["accuracy"] = ginn::pixel_accuracy(last.params, run.target);
  }
  return out;
}

// ---- export-bundle ---------------------------------------------------------

int RunExport(const std::string& run_path, const std::string& out_path, int grid,
              bool force) {
  const fs::path out(out_path);
  RefuseOverwrite(out, force);
  const ginn::RunRecord run = ginn::load_run(run_path);
  const Json bundle = ginn::BundleToJson(ginn::export_bundle(run, ginn::GridSpec{grid}, {}));
  ginn::ValidateBundleJson(bundle);
  const std::string text = bundle.dump() + "\n";
  ginn::WriteFileBytes(out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()));
  PrintJson({{"out", out.string()},
             {"snapshots", run.snapshots.size()},
             {"bytes", text.size()}});
  return kExitOk;
}

// ---- make-target -----------------------------------------------------------

int RunMakeTarget(const std::string& procedural, const std::string& from_image,
                  const std::string& out_path, bool force) {
  const fs::path out(out_path);
  RefuseOverwrite(out, force);
  const ginn::TargetImage target = LoadTargetArg(from_image, procedural);
  ginn::WriteFileBytes(out, ginn::EncodePng(ginn::target_to_image(target)));
  PrintJson({{"out", out.string()}, {"width", target.width()}, {"height", target.height()}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train ReLU coordinate networks and inspect their decision boundaries"};
  app.require_subcommand(1, 1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a network and write a run file");
  auto* image_opt = train_cmd->add_option("--image", train.image, "Target image (PNG)");
  auto* proc_opt =
      train_cmd->add_option("--procedural", train.procedural, "Procedural bottle, WxH");
  image_opt->excludes(proc_opt);
  train_cmd->add_option("--iters", train.iters, "Training iterations")->capture_default_str();
  train_cmd->add_option("--batch", train.batch, "Mini-batch size")->capture_default_str();
  train_cmd->add_option("--lr", train.lr, "Base learning rate")->capture_default_str();
  train_cmd->add_option("--seed", train.seed, "Initialization seed")->capture_default_str();
  train_cmd->add_option("--data-seed", train.data_seed, "Mini-batch seed (default: --seed)");
  train_cmd->add_option("--snapshots", train.snapshots, "Snapshot count")->capture_default_str();
  train_cmd->add_option("--schedule", train.schedule, "Snapshot spacing")
      ->check(CLI::IsMember({"log-spaced", "uniform"}))
      ->capture_default_str();
  train_cmd->add_option("--out", train.out, "Run file to write")->required();
  train_cmd->add_flag("--force", train.force, "Overwrite an existing run file");

  std::string run_path, out_path, procedural, from_image, metric;
  int res = 512, grid = 256;
  bool force = false;

  auto* render_cmd = app.add_subcommand("render", "Render one PNG frame per snapshot");
  render_cmd->add_option("--run", run_path, "Run file")->required();
  render_cmd->add_option("--out", out_path, "Output directory")->required();
  render_cmd->add_option("--res", res, "Frame resolution")->capture_default_str();
  render_cmd->add_option("--grid", grid, "Contour grid resolution")->capture_default_str();
  render_cmd->add_flag("--force", force, "Overwrite existing frames");

  auto* analyze_cmd = app.add_subcommand("analyze", "Print one analysis report as JSON");
  analyze_cmd->add_option("--run", run_path, "Run file")->required();
  analyze_cmd->add_option("--metric", metric, "Report to compute")
      ->required()
      ->check(CLI::IsMember({"bias-weight", "copycat", "flip", "symmetry", "corners", "accuracy"}));
  analyze_cmd->add_option("--grid", grid, "Grid resolution")->capture_default_str();

  auto* export_cmd = app.add_subcommand("export-bundle", "Write a self-contained viewer bundle");
  export_cmd->add_option("--run", run_path, "Run file")->required();
  export_cmd->add_option("--out", out_path, "Bundle file to write")->required();
  export_cmd->add_option("--grid", grid, "Contour grid resolution")->capture_default_str();
  export_cmd->add_flag("--force", force, "Overwrite an existing bundle");

  auto* target_cmd = app.add_subcommand("make-target", "Write the binary target as a PNG");
  auto* tproc = target_cmd->add_option("--procedural", procedural, "Procedural bottle, WxH");
  auto* timg = target_cmd->add_option("--from-image", from_image, "Source image (PNG)");
  tproc->excludes(timg);
  target_cmd->add_option("--out", out_path, "PNG to write")->required();
  target_cmd->add_flag("--force", force, "Overwrite an existing file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) {
      if (train.image.empty() == train.procedural.empty()) {
        std::cerr << "train: exactly one of --image or --procedural is required\n"
                  << train_cmd->help();
        return kExitUsage;
      }
      return RunTrain(train);
    }
    if (*render_cmd) return RunRender(run_path, out_path, res, grid, force);
    if (*analyze_cmd) {
      const ginn::RunRecord run = ginn::load_run(run_path);
      ginn::GridSpec spec{grid};
      spec.Validate();
      PrintJson(Analyze(run, metric, spec));
      return kExitOk;
    }
    if (*export_cmd) return RunExport(run_path, out_path, grid, force);
    if (*target_cmd) {
      if (procedural.empty() == from_image.empty()) {
        std::cerr << "make-target: exactly one of --procedural or --from-image is required\n"
                  << target_cmd->help();
        return kExitUsage;
      }
      return RunMakeTarget(procedural, from_image, out_path, force);
    }
  } catch (const ginn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
