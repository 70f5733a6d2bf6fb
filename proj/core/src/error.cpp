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

#include "kmetric/error.hpp"

namespace kmetric {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MatrixShape: return "MatrixShape";
    case ErrorKind::AsymmetricDistance: return "AsymmetricDistance";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::SamePoint: return "SamePoint";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NonpositiveParameter: return "NonpositiveParameter";
    case ErrorKind::LabelCollision: return "LabelCollision";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::BadFamilyParams: return "BadFamilyParams";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::vector<std::string> subjects)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      subjects_(std::move(subjects)) {}

}  // namespace kmetric
