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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "ginn/base64.h"
#include "ginn/error.h"
#include "test_support.h"

namespace ginn {
namespace {

TEST(RunStore, RoundTripRandomRecords) {
  Rng rng(1234, Rng::Stream::kTest);
  const auto dir = testing::ScratchDir("run_store_roundtrip");
  for (int k = 0; k < 20; ++k) {
    const RunRecord run = testing::RandomRunRecord(rng);
    const auto path = dir / ("run" + std::to_string(k) + ".json");
    save_run(run, path);
    const RunRecord back = load_run(path);
    EXPECT_EQ(back, run) << k;
    // Saving again is byte-stable.
    save_run(back, dir / "again.json");
    EXPECT_EQ(ReadFileBytes(path), ReadFileBytes(dir / "again.json"));
  }
}

TEST(RunStore, TrainedRunRoundTrip) {
  TrainingConfig cfg;
  cfg.total_iterations = 100;
  const RunRecord run =
      train(NetworkConfig{}, cfg, procedural_bottle(32, 32), make_schedule(100, 5));
  const auto path = testing::ScratchDir("run_store_trained") / "run.json";
  save_run(run, path);
  EXPECT_EQ(load_run(path), run);
}

class Corrupt : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(99, Rng::Stream::kTest);
    run_.emplace(testing::RandomRunRecord(rng));
    json_ = RunToJson(*run_);
  }
  ErrorCode CodeOf(const Json& j) {
    try {
      RunFromJson(j);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "accepted";
    return ErrorCode::kInvalidArgument;
  }
  std::optional<RunRecord> run_;
  Json json_;
};

TEST_F(Corrupt, TruncatedFile) {
  const auto path = testing::ScratchDir("run_store_truncated") / "run.json";
  save_run(*run_, path);
  auto bytes = ReadFileBytes(path);
  bytes.resize(bytes.size() / 2);
  WriteFileBytes(path, bytes);
  try {
    load_run(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformed);
    EXPECT_NE(std::string(e.what()).find("malformed"), std::string::npos);
  }
}

TEST_F(Corrupt, MissingFile) {
  try {
    load_run(testing::ScratchDir("run_store_missing") / "nope.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST_F(Corrupt, Version) {
  json_["version"] = 999;
  EXPECT_EQ(CodeOf(json_), ErrorCode::kUnsupportedVersion);
  try {
    RunFromJson(json_);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported version"), std::string::npos);
  }
}

TEST_F(Corrupt, WrongFormatOrMissingFields) {
  Json j = json_;
  j["format"] = "something-else";
  EXPECT_EQ(CodeOf(j), ErrorCode::kMalformed);
  j = json_;
  j.erase("target");
  EXPECT_EQ(CodeOf(j), ErrorCode::kMalformed);
  j = json_;
  j["snapshots"][0]["loss"] = "low";
  EXPECT_EQ(CodeOf(j), ErrorCode::kMalformed);
  j = json_;
  j["target"]["labels"] = "!!!";
  EXPECT_EQ(CodeOf(j), ErrorCode::kMalformed);
  EXPECT_EQ(CodeOf(Json::array()), ErrorCode::kMalformed);
}

TEST_F(Corrupt, ShapeMismatch) {
  Json j = json_;
  j["snapshots"][0]["params"]["layers"][0]["weights"].push_back(1.0);
  EXPECT_EQ(CodeOf(j), ErrorCode::kShapeMismatch);
  j = json_;
  j["snapshots"][0]["params"]["layers"].erase(0);
  EXPECT_EQ(CodeOf(j), ErrorCode::kShapeMismatch);
  j = json_;
  j["net_config"]["output_dim"] = 3;
  EXPECT_EQ(CodeOf(j), ErrorCode::kShapeMismatch);
  j = json_;
  j["snapshots"][0]["iteration"] = 7777777;
  EXPECT_EQ(CodeOf(j), ErrorCode::kShapeMismatch);
}

class Bundle : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    TrainingConfig cfg;
    cfg.total_iterations = 400;
    run_ = new RunRecord(train(NetworkConfig{}, cfg, procedural_bottle(32, 32),
                               make_schedule(400, 4)));
    bundle_ = new ViewerBundle(export_bundle(*run_, GridSpec{64}, FrameSpec{}));
    json_ = new Json(BundleToJson(*bundle_));
  }
  static void TearDownTestSuite() {
    delete json_;
    delete bundle_;
    delete run_;
  }
  static RunRecord* run_;
  static ViewerBundle* bundle_;
  static Json* json_;
};

RunRecord* Bundle::run_ = nullptr;
ViewerBundle* Bundle::bundle_ = nullptr;
Json* Bundle::json_ = nullptr;

TEST_F(Bundle, Counts) {
  ASSERT_EQ(bundle_->snapshots.size(), run_->snapshots.size());
  for (std::size_t k = 0; k < bundle_->snapshots.size(); ++k) {
    const BundleSnapshot& s = bundle_->snapshots[k];
    EXPECT_EQ(s.boundaries.boundaries.size(), 48u);
    EXPECT_EQ(s.heatmap.size(), 128u * 128u);
    EXPECT_EQ(s.shift.has_value(), k > 0);
    EXPECT_EQ(s.corners.corners.size(), bundle_->corners.size());
  }
  EXPECT_EQ((*json_)["snapshots"][0]["boundaries"].size(), 48u);
  EXPECT_TRUE((*json_)["snapshots"][0]["metrics"]["shift"].is_null());
  EXPECT_TRUE((*json_)["snapshots"][1]["metrics"]["shift"].is_object());
  EXPECT_NO_THROW(ValidateBundleJson(*json_));
}

// The heatmap bytes are checked against an independent re-evaluation.
TEST_F(Bundle, HeatmapMatchesReevaluation) {
  const double floor = std::log(1e-3);
  const Json& snaps = (*json_)["snapshots"];
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const auto texels = Base64Decode(snaps[k]["heatmap"].get<std::string>());
    ASSERT_EQ(texels.size(), 128u * 128u);
    const NetworkParams& p = run_->snapshots[k].params;
    ASSERT_EQ(snaps[k]["params"], ParamsToJson(p));
    for (int y = 0; y < 128; ++y) {
      for (int x = 0; x < 128; ++x) {
        const double lp = testing::OracleLogProbs(p, {(x + 0.5) / 128, (y + 0.5) / 128}).second;
        const double want = std::clamp((lp - floor) / -floor, 0.0, 1.0);
        EXPECT_LE(std::abs(texels[static_cast<std::size_t>(y) * 128 + x] / 255.0 - want),
                  1.0 / 255.0);
      }
    }
  }
}

TEST_F(Bundle, PolylinesRoundedAndInside) {
  for (const Json& b : (*json_)["snapshots"].back()["boundaries"]) {
    for (const Json& line : b["polylines"]) {
      for (const Json& v : line) {
        const double d = v.get<double>();
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 1.0);
        EXPECT_NEAR(d * 1e6, std::round(d * 1e6), 1e-6);
      }
    }
  }
}

TEST_F(Bundle, ValidatorRejectsCorruption) {
  auto rejects = [](const Json& j) {
    try {
      ValidateBundleJson(j);
    } catch (const Error& e) {
      return e.code() == ErrorCode::kMalformed || e.code() == ErrorCode::kShapeMismatch ||
             e.code() == ErrorCode::kUnsupportedVersion;
    }
    return false;
  };
  Json j = *json_;
  j["version"] = 2;
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["snapshots"][0]["boundaries"].erase(5);
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["snapshots"][0]["heatmap"] = Base64Encode(std::vector<std::uint8_t>(10, 0));
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["snapshots"][1]["boundaries"][3]["polylines"] = Json::array({Json::array({0.5, 1.5, 0.5, 0.2})});
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["palette"][0] = Json::array({0, 0, 300});
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["snapshots"][0]["metrics"]["accuracy"] = 2.0;
  EXPECT_TRUE(rejects(j));
  j = *json_;
  j["heatmap_encoding"] = "png";
  EXPECT_TRUE(rejects(j));
}

TEST_F(Bundle, Deterministic) {
  setenv("GINN_THREADS", "3", 1);
  const Json again = BundleToJson(export_bundle(*run_, GridSpec{64}, FrameSpec{}));
  unsetenv("GINN_THREADS");
  EXPECT_EQ(again.dump(), json_->dump());
}

TEST(ReportJson, Shapes) {
  ShiftReport shift;
  shift.neurons.push_back({0, false, 0.1, 0.2});
  const Json s = ToJson(shift);
  EXPECT_TRUE(s["offset_to_angle_ratio"].is_null());
  EXPECT_EQ(s["neurons"].size(), 1u);
  CopycatReport copy{0.98, {{2, 1, 4, 0.99}}};
  EXPECT_EQ(ToJson(copy)["pairs"][0]["second"], 4);
  SymmetryReport sym{0.25, {0.1, 0.2, 0.3}};
  EXPECT_EQ(ToJson(sym)["layer_mirror_distance"].size(), 3u);
}

}  // namespace
}  // namespace ginn
