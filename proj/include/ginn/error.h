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

#ifndef GINN_ERROR_H_
#define GINN_ERROR_H_

#include <stdexcept>
#include <string>

namespace ginn {

// Broad failure categories. The CLI maps these onto its exit codes, so the
// set is part of the public contract.
enum class ErrorCode {
  kInvalidArgument,
  kCorruptParameters,
  kDivergence,
  kDegenerateTarget,
  kDegenerateNeuron,
  kDecode,
  kIo,
  kMalformed,
  kUnsupportedVersion,
  kShapeMismatch,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ginn

#endif  // GINN_ERROR_H_
