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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kmetric/graph.hpp"
#include "kmetric/metric_space.hpp"
#include "kmetric/solver.hpp"

namespace kmetric {

enum class Family {
  Path,            // path:n            P_n on v1..vn
  Cycle,           // cycle:n           C_n on v0..v(n-1)
  Complete,        // complete:n        K_n on v1..vn
  Petersen,        // petersen          outer u1..u5, inner pentagram v1..v5
  Lollipop,        // lollipop:5,t      C_5 (v1..v4, u1) with a tail u1..ut
  GridBall,        // grid-ball:p,r     Z^p restricted to the L1 ball of radius r
  FreeBall,        // free-ball:p,r     Cayley tree of the free group F_p, radius r
  Ladder,          // ladder:r          Z x {0,1}, m in [-r, r]
  SqrtPrimes,      // sqrt-primes:m     {sqrt(p)} for the first m primes
  IntervalSample,  // interval:m        {i/(m-1)} in [0,1]
};

struct FamilySpec {
  Family family = Family::Path;
  std::vector<long long> params;

  /// Canonical specifier, e.g. "grid-ball:2,4".
  std::string str() const;
};

/// Parses the CLI mini-language ("path:7", "lollipop:5,4", "petersen").
/// Underscore spellings ("grid_ball") are accepted too. Validates parameters.
FamilySpec parse_family(std::string_view text);

/// Throws BadFamilyParams when arity or ranges are wrong.
void validate(const FamilySpec& spec);

/// Graph families yield a Graph; sqrt-primes and interval yield a metric space.
std::variant<Graph, FiniteMetricSpace> make(const FamilySpec& spec);

/// make() followed by shortest_path_metric() for graph families.
FiniteMetricSpace make_space(const FamilySpec& spec);

/// Per-entry closed form where one is known. Unknown entries are nullopt;
/// the whole result is nullopt when nothing is known.
struct ExpectedSequence {
  std::vector<std::optional<ExtendedNat>> entries;  // entries[k-1]
  std::optional<std::size_t> tail_start;
};

std::optional<ExpectedSequence> expected_sequence(const FamilySpec& spec);

/// Number of pairs of the grid ball whose distance inside the ball differs
/// from the lattice (L1) distance.
std::size_t grid_ball_distance_mismatches(long long rank, long long radius);

struct DivergenceStep {
  long long radius = 0;
  std::size_t points = 0;
  SolveReport dim1;
  std::string pair_u, pair_v;            // the witness bisector B(u|v)
  std::vector<std::string> witness;      // labels, known to lie in B(u|v)
  std::size_t bisector_size = 0;
  bool witness_in_bisector = false;
  bool nested_in_next = true;            // witness ⊆ next radius's witness (by label)
  double fraction = 0.0;                 // |witness| / points
  std::size_t metric_mismatches = 0;     // grid balls only
  std::optional<bool> basis_check;       // ladder only: {0, 1, i} is a 1-generator
};

struct DivergenceReport {
  FamilySpec family;  // radius parameter of the last step
  std::vector<DivergenceStep> steps;
  bool dim1_nondecreasing = true;
  bool dim1_strictly_increasing = true;
  bool chain_nested = true;
  bool witnesses_hold = true;
};

/// Balls of growing radius in an infinite family: dim_1 per radius plus a
/// nested chain of sets each contained in one bisector. Supports grid-ball
/// and free-ball (rank >= 2) and ladder (rank ignored). Radii must be
/// strictly increasing, at least two of them.
DivergenceReport divergence_evidence(Family family, long long rank, const std::vector<long long>& radii,
                                     const SolveOptions& options = {});

}  // namespace kmetric
