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

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#ifndef GINN_TESTS_TEST_SUPPORT_H_
#define GINN_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ginn/boundary.h"
#include "ginn/data.h"
#include "ginn/net.h"
#include "ginn/rng.h"
#include "ginn/train.h"

namespace ginn::testing {

// Parameters with every entry drawn uniformly from [-scale, scale], biases
// included (init_params zeroes biases, which hides bias bugs).
NetworkParams RandomParams(const NetworkConfig& config, Rng& rng, double scale = 1.0);

std::vector<LabeledPoint> RandomBatch(Rng& rng, int size);

// Straight-line re-implementation of the forward pass: returns
// (log P(black), log P(white)) computed as log(exp(l) / sum(exp)).
std::pair<double, double> OracleLogProbs(const NetworkParams& params, Point p);

// Hidden preactivations from the same straight-line evaluator.
std::vector<std::vector<double>> OraclePreactivations(const NetworkParams& params, Point p);

// Mean negative log-likelihood through OracleLogProbs.
double OracleLoss(const NetworkParams& params, const std::vector<LabeledPoint>& batch);

// Sign pattern of every hidden unit on every batch point.
std::vector<bool> ActivationPattern(const NetworkParams& params,
                                    const std::vector<LabeledPoint>& batch);

// Target whose left half (x < 0.5) is black and right half white.
TargetImage HalfPlaneTarget(int width, int height);

// 1-hidden-layer network that classifies the half-plane target perfectly with
// log-probabilities saturated to 0 / -huge away from x = 0.5.
NetworkParams HalfPlaneMemorizer();

// A structurally valid run record with random shapes, seeds, schedule and
// target, and parameters that include doubles a lossy serializer would break.
RunRecord RandomRunRecord(Rng& rng);

// Brute-force check of marching-squares output against the node sign grid
// (node >= 0 is positive). Every edge whose endpoints differ in sign must be
// crossed by exactly one segment from each adjacent cell, no other edge may be
// crossed, and each crossing point must lie on its edge. Returns an empty
// string when everything holds, else a description of the first violation.
std::string CheckContourAgainstSignGrid(const ScalarField& field,
                                        const std::vector<ContourSegment>& segments);

// Fresh empty directory under the system temp dir.
std::filesystem::path ScratchDir(const std::string& name);

}  // namespace ginn::testing

#endif  // GINN_TESTS_TEST_SUPPORT_H_
