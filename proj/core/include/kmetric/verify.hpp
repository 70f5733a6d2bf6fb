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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kmetric/graph.hpp"
#include "kmetric/metric_space.hpp"
#include "kmetric/random_spaces.hpp"
#include "kmetric/solver.hpp"

namespace kmetric {

// Executable property suites for the structural theorems on k-metric
// dimension. Each property counts instances; a failure keeps the smallest
// failing instance serialized as JSON.

struct PropertyResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::optional<std::string> counterexample;
  std::size_t counterexample_points = 0;
  std::string failure_note;

  bool ok() const noexcept { return checked == passed; }
  void record(bool pass, std::size_t points, const std::function<std::string()>& serialize, const std::string& note);
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;
  bool ok() const;
};

struct JoinInstance {
  FiniteMetricSpace left;
  FiniteMetricSpace right;
  Rational t;
};

/// dim_k for k = 1 .. k_last, each level solved on its own (no chained
/// lower bound), so monotonicity checks are not satisfied by construction.
std::vector<SolveReport> independent_dims(const FiniteMetricSpace& space, std::size_t k_last,
                                          const SolveOptions& options);

/// dim_{k+1} >= dim_k + 1, dim_k >= dim_1 + k - 1, k <= dim_k <= n below the
/// tail and infinity at max_k + 1, greedy >= optimum, bases certified.
SuiteReport verify_monotonicity(std::span<const FiniteMetricSpace> spaces, const SolveOptions& options = {});

/// dim^s_k >= dim^t_k >= dim_k for each (s, t), plus bisector nesting.
SuiteReport verify_truncation(std::span<const FiniteMetricSpace> spaces,
                              std::span<const std::pair<Rational, Rational>> st_pairs,
                              const SolveOptions& options = {});

/// B(u|v) ⊆ B^t(u|v) ⊆ B^s(u|v) for every pair, for both cutoff readings
/// (2t and t).
SuiteReport verify_nesting(std::span<const FiniteMetricSpace> spaces,
                           std::span<const std::pair<Rational, Rational>> st_pairs);

/// dim_k(X1) + dim_k(X2) <= dim^t_k(X1) + dim^t_k(X2) <= dim^t_k(X1 + X2).
SuiteReport verify_join(std::span<const JoinInstance> joins, const SolveOptions& options = {});

/// dim^t_k(X1 + X2) = dim_k(X1) + dim_k(X2) when t exceeds both diameters.
SuiteReport verify_join_equality(std::span<const JoinInstance> joins, const SolveOptions& options = {});

/// Bipartite graphs: pairs at odd distance have empty bisectors.
SuiteReport verify_bipartite(std::span<const Graph> graphs);

/// dim_exact == dim_bruteforce for k = 1 .. max_k + 1.
SuiteReport verify_oracle(std::span<const FiniteMetricSpace> spaces, const SolveOptions& options = {});

/// Optimum values survive a random relabelling of the points.
SuiteReport verify_permutation(std::span<const FiniteMetricSpace> spaces, std::uint64_t seed,
                               const SolveOptions& options = {});

/// (1,2), (1,4), (2,4).
std::vector<std::pair<Rational, Rational>> default_truncation_pairs();

/// Random disjoint pairs with part sizes in [2, max_part]. With
/// `above_diameters`, t = max(diam) + 1/2; otherwise t in {1/2, 1, 3/2, 2, 3}.
std::vector<JoinInstance> random_joins(InstanceGenerator& gen, std::size_t count, std::size_t max_part,
                                       bool above_diameters);

}  // namespace kmetric
