// Copyright 2026 The kmetric Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kmetric {

enum class ErrorKind {
  MatrixShape,
  AsymmetricDistance,
  NegativeDistance,
  ZeroOffDiagonal,
  NonzeroDiagonal,
  TriangleViolation,
  DuplicateLabel,
  TooFewPoints,
  SamePoint,
  IndexOutOfRange,
  NonpositiveParameter,
  LabelCollision,
  SelfLoop,
  DuplicateEdge,
  UnknownVertex,
  DisconnectedGraph,
  BadFamilyParams,
  InstanceTooLarge,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `subjects` names the offending
/// labels or indices, in the order the message mentions them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::vector<std::string> subjects = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& subjects() const noexcept { return subjects_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> subjects_;
};

}  // namespace kmetric
