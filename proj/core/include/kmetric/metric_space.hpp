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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kmetric/point_set.hpp"
#include "kmetric/rational.hpp"

namespace kmetric {

using DistanceMatrix = std::vector<std::vector<Rational>>;
using Metadata = std::map<std::string, std::string>;

/// A finite set of labelled points with an exact metric. Instances only come
/// out of build_space() and the operations below, so every instance satisfies
/// the metric axioms. Immutable once built.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }
  std::optional<PointIndex> index_of(std::string_view label) const;

  const Rational& distance(PointIndex i, PointIndex j) const { return dist_[i * size() + j]; }

  /// True when d(x,u) == d(x,v). Uses the integer image of the matrix when
  /// one exists.
  bool equidistant(PointIndex x, PointIndex u, PointIndex v) const {
    if (!scaled_.empty()) return scaled_[x * size() + u] == scaled_[x * size() + v];
    return distance(x, u) == distance(x, v);
  }

  DistanceMatrix matrix() const;
  Rational diameter() const;

  const Metadata& meta() const noexcept { return meta_; }
  /// Non-fatal notes raised at construction (e.g. a 2-point space).
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  friend FiniteMetricSpace build_space(std::vector<std::string>, const DistanceMatrix&, Metadata);

  std::vector<std::string> labels_;
  std::vector<Rational> dist_;
  // dist_ times the lcm of its denominators, when that fits in 62 bits.
  std::vector<std::int64_t> scaled_;
  Metadata meta_;
  std::vector<std::string> warnings_;
};

/// Validates and builds a space. Throws Error with kind MatrixShape,
/// DuplicateLabel, TooFewPoints, NonzeroDiagonal, NegativeDistance,
/// ZeroOffDiagonal, AsymmetricDistance or TriangleViolation; the error's
/// subjects are the offending labels.
FiniteMetricSpace build_space(std::vector<std::string> labels, const DistanceMatrix& dist,
                              Metadata meta = {});

struct PointPair {
  PointIndex u = 0;
  PointIndex v = 0;
  friend auto operator<=>(const PointPair&, const PointPair&) = default;
};

/// B(u|v): points equidistant from u and v. Never contains u or v.
PointSet bisector(const FiniteMetricSpace& space, PointIndex u, PointIndex v);

/// B^c(u|v): points that tell u and v apart. Always contains u and v.
PointSet distinguishers(const FiniteMetricSpace& space, PointIndex u, PointIndex v);

/// B^c(u|v) for every pair u < v, in lexicographic pair order.
struct DistinguisherMap {
  std::size_t n = 0;
  std::vector<PointPair> pairs;
  std::vector<PointSet> sets;

  std::size_t pair_index(PointIndex u, PointIndex v) const;
  const PointSet& at(PointIndex u, PointIndex v) const { return sets[pair_index(u, v)]; }
  std::size_t min_set_size() const;
};

DistinguisherMap all_distinguishers(const FiniteMetricSpace& space);

struct KGeneratorCertificate {
  std::size_t k = 1;
  PointSet set;
  std::vector<std::size_t> coverage;  // |set ∩ B^c(u|v)|, aligned with DistinguisherMap::pairs
  bool valid = false;
  std::optional<PointPair> witness;  // first pair with coverage < k
  std::size_t min_coverage = 0;
};

KGeneratorCertificate is_k_generator(const DistinguisherMap& map, const PointSet& set, std::size_t k);
KGeneratorCertificate is_k_generator(const FiniteMetricSpace& space, const PointSet& set, std::size_t k);

/// Largest k admitting a k-metric generator: min_{u<v} |B^c(u|v)|.
std::size_t max_k(const DistinguisherMap& map);
std::size_t max_k(const FiniteMetricSpace& space);

/// d^t(x,y) = min(d(x,y), 2t).
FiniteMetricSpace truncate(const FiniteMetricSpace& space, const Rational& t);

/// min(d(x,y), cap) with the cap given directly.
FiniteMetricSpace truncate_at(const FiniteMetricSpace& space, const Rational& cap);

/// X1 + X2 relative to t: parts keep their 2t-truncated metrics, points in
/// different parts are exactly t apart. Labels must be disjoint.
FiniteMetricSpace join(const FiniteMetricSpace& a, const FiniteMetricSpace& b, const Rational& t);

/// Point i of `space` becomes point perm[i] of the result.
FiniteMetricSpace permute(const FiniteMetricSpace& space, std::span<const PointIndex> perm);

FiniteMetricSpace prefix_labels(const FiniteMetricSpace& space, std::string_view prefix);

/// Points on the real line with exact coordinates.
FiniteMetricSpace from_line_points(std::vector<std::string> labels, const std::vector<Rational>& coords,
                                   Metadata meta = {});

/// Euclidean point set, quantized to `digits` decimal places. One-dimensional
/// input quantizes coordinates (exact differences); otherwise distances are
/// quantized and then closed under shortest paths, which repairs any
/// rounding-induced triangle violation. The precision and the number of
/// repaired entries are recorded in meta().
FiniteMetricSpace from_euclidean_points(std::vector<std::string> labels,
                                        const std::vector<std::vector<double>>& coords,
                                        int digits = kDefaultQuantizationDigits);

}  // namespace kmetric
