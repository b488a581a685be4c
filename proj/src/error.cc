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

#include "ginn/error.h"

namespace ginn {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kCorruptParameters: return "corrupt parameters";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kDegenerateTarget: return "degenerate target";
    case ErrorCode::kDegenerateNeuron: return "degenerate neuron";
    case ErrorCode::kDecode: return "decode error";
    case ErrorCode::kIo: return "io error";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kUnsupportedVersion: return "unsupported version";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
  }
  return "unknown";
}

}  // namespace ginn
