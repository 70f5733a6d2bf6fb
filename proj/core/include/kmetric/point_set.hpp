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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace kmetric {

using PointIndex = std::size_t;

/// A set of point indices, kept sorted and duplicate-free. Comparison is
/// lexicographic on the sorted index list.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<PointIndex> indices) : PointSet(std::vector<PointIndex>(indices)) {}
  explicit PointSet(std::vector<PointIndex> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  }

  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }
  PointIndex operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<PointIndex>& indices() const noexcept { return indices_; }

  bool contains(PointIndex p) const { return std::binary_search(indices_.begin(), indices_.end(), p); }

  /// True when every index is below `n`.
  bool fits(std::size_t n) const noexcept { return indices_.empty() || indices_.back() < n; }

  /// |this ∩ other|
  std::size_t intersection_size(const PointSet& other) const {
    std::size_t count = 0;
    auto a = indices_.begin();
    auto b = other.indices_.begin();
    while (a != indices_.end() && b != other.indices_.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++count;
        ++a;
        ++b;
      }
    }
    return count;
  }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.indices_ <=> b.indices_; }

 private:
  std::vector<PointIndex> indices_;
};

}  // namespace kmetric
