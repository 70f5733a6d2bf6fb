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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kmetric/metric_space.hpp"
#include "kmetric/point_set.hpp"

namespace kmetric {

/// A non-negative integer or +infinity. Infinity compares above every finite
/// value and absorbs addition.
class ExtendedNat {
 public:
  constexpr ExtendedNat() = default;
  constexpr ExtendedNat(std::uint64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  static constexpr ExtendedNat infinity() {
    ExtendedNat x;
    x.finite_ = false;
    return x;
  }

  constexpr bool is_finite() const noexcept { return finite_; }
  /// Throws std::logic_error on infinity.
  std::uint64_t value() const;

  std::string str() const;  // "inf" or the decimal value

  friend constexpr bool operator==(const ExtendedNat& a, const ExtendedNat& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedNat& a, const ExtendedNat& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.finite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }
  friend constexpr ExtendedNat operator+(const ExtendedNat& a, const ExtendedNat& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return ExtendedNat(a.value_ + b.value_);
  }

 private:
  std::uint64_t value_ = 0;
  bool finite_ = true;
};

enum class SolveStatus {
  Optimal,     // optimum proven
  Infeasible,  // k > max_k, optimum is infinity
  Bounded,     // budget exhausted; optimum holds the incumbent, lower_bound the proven bound
};

std::string to_string(SolveStatus status);

struct BoundEntry {
  std::string source;  // "k", "previous_level", "packing", "block_packing", "greedy"
  std::uint64_t value = 0;
};

struct SolveReport {
  std::size_t k = 1;
  SolveStatus status = SolveStatus::Optimal;
  ExtendedNat optimum;
  std::optional<PointSet> basis;  // present iff optimum is finite
  std::uint64_t lower_bound = 0;
  std::vector<BoundEntry> lower_bound_trace;
  std::uint64_t nodes_explored = 0;
  std::optional<std::uint64_t> greedy_value;
  bool canonical_basis = false;  // basis is the lexicographically smallest optimum
  double elapsed_secs = 0.0;
};

struct SolveOptions {
  double budget_secs = 60.0;
  /// Explore the search tree on a thread pool. Optimum values are identical
  /// to sequential mode; returned bases and node counts may differ.
  bool parallel = false;
  unsigned threads = 0;  // 0: hardware concurrency
  /// Known lower bound on the answer, e.g. dim_{k-1} + 1.
  std::optional<std::uint64_t> lower_bound_hint;
  /// Sequential mode only: refine the basis to the lexicographically smallest
  /// optimal set.
  bool canonical_basis = true;
};

struct GreedyResult {
  std::uint64_t value = 0;
  PointSet set;
};

/// Adds, one at a time, the point that most reduces the total deficit
/// sum_{u<v} max(0, k - |S ∩ B^c(u|v)|); ties go to the smallest index.
/// std::nullopt when k > max_k.
std::optional<GreedyResult> greedy_upper(const DistinguisherMap& map, std::size_t k);
std::optional<GreedyResult> greedy_upper(const FiniteMetricSpace& space, std::size_t k);

/// Exact dim_k by branch and bound over the k-multicover formulation.
SolveReport dim_exact(const DistinguisherMap& map, std::size_t k, const SolveOptions& options = {});
SolveReport dim_exact(const FiniteMetricSpace& space, std::size_t k, const SolveOptions& options = {});

inline constexpr std::size_t kDefaultBruteForceCap = 16;

/// Reference answer by enumerating subsets in order of size. Throws
/// InstanceTooLarge above `cap` points.
ExtendedNat dim_bruteforce(const FiniteMetricSpace& space, std::size_t k, std::size_t cap = kDefaultBruteForceCap);

struct DimensionSequence {
  std::vector<ExtendedNat> entries;     // entries[k-1] = dim_k
  std::optional<std::size_t> tail_start;  // first k with dim_k = infinity
  std::vector<SolveReport> reports;     // one per entry

  /// dim_k for any k >= 1; std::nullopt when k lies between the computed
  /// prefix and the tail.
  std::optional<ExtendedNat> at(std::size_t k) const;
  bool all_optimal() const;
};

/// dim_1 .. dim_{min(k_max, max_k)}; level k is seeded with dim_{k-1} + 1.
/// k_max defaults to max_k.
DimensionSequence dimension_sequence(const FiniteMetricSpace& space, std::optional<std::size_t> k_max = {},
                                     const SolveOptions& options = {});

}  // namespace kmetric
