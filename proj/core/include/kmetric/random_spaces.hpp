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
#include <cstdint>
#include <random>

#include "kmetric/graph.hpp"
#include "kmetric/metric_space.hpp"

namespace kmetric {

/// Seeded source of random test instances. The same seed and call sequence
/// give the same instances.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  /// Erdős–Rényi G(n, p) with p drawn from [0.2, 0.7], resampled until
  /// connected. Vertices "g0".."g{n-1}".
  Graph connected_graph(std::size_t n);

  /// Random bipartite graph (random side split, edges across with p in
  /// [0.3, 0.8]) resampled until connected.
  Graph connected_bipartite_graph(std::size_t n);

  /// Shortest-path closure of a complete graph with random rational edge
  /// weights a/b, a in [1, 8], b in {1, 2, 3}. Points "x0".."x{n-1}".
  FiniteMetricSpace rational_metric(std::size_t n);

  /// Even draws give graph metrics, odd draws rational metrics.
  FiniteMetricSpace mixed(std::size_t n);

  std::size_t size_between(std::size_t lo, std::size_t hi);
  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::uint64_t draws_ = 0;
};

}  // namespace kmetric
