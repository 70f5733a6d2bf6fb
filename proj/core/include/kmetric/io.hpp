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

#include <filesystem>
#include <string>
#include <string_view>

#include "kmetric/metric_space.hpp"
#include "kmetric/solver.hpp"

namespace kmetric {

/// {"labels": [...], "distances": [["0","3/2"],...], "meta": {...}}.
/// Distances are written as lowest-terms rational strings; labels keep their
/// order; meta keys are sorted. Output is byte-stable for equal spaces.
std::string space_to_json(const FiniteMetricSpace& space, int indent = 2);

/// Accepts distances as rational/decimal strings or JSON integers. JSON
/// floating-point numbers are quantized (meta "quantization_digits", default
/// 12) and the precision is recorded in meta.
FiniteMetricSpace space_from_json(std::string_view text);

/// ".json" files are metric spaces; anything else is read as an edge list
/// and converted with shortest_path_metric().
FiniteMetricSpace load_space(const std::filesystem::path& path);

/// Solve report with the basis given both as indices and labels. Timing is
/// left out unless asked for, so repeated runs serialize identically.
std::string solve_report_to_json(const SolveReport& report, const FiniteMetricSpace& space,
                                 bool include_timing = false);

/// "k,dim_k" rows with an "inf" row at the tail start.
std::string sequence_to_csv(const DimensionSequence& sequence);

}  // namespace kmetric
