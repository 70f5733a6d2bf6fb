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
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kmetric/metric_space.hpp"

namespace kmetric {

/// Simple undirected graph over labelled vertices.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  /// Throws DuplicateLabel, SelfLoop, DuplicateEdge or UnknownVertex.
  Graph(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& edges);
  /// Index-based construction for generators.
  Graph(std::vector<std::string> labels, const std::vector<Edge>& edges);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

  /// BFS distances from `source`; unreachable vertices get std::nullopt.
  std::vector<std::optional<std::size_t>> distances_from(std::size_t source) const;

 private:
  void add_edges(const std::vector<Edge>& edges);

  std::vector<std::string> labels_;
  std::vector<Edge> edges_;  // normalised first < second, in insertion order
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Reads the edge-list text format: one "u v" pair per line, '#' starts a
/// comment, an optional "vertices: a b c" line declares vertices (including
/// isolated ones) ahead of the edges.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list_text(const std::string& text);

/// All-pairs BFS. Throws DisconnectedGraph naming one vertex from each of two
/// components.
FiniteMetricSpace shortest_path_metric(const Graph& g);

struct BipartiteCheck {
  bool bipartite = false;
  std::vector<int> coloring;           // 0/1 per vertex when bipartite
  std::vector<std::size_t> odd_cycle;  // closed walk v0..vm (v0 adjacent to vm) otherwise
};

BipartiteCheck is_bipartite(const Graph& g);

/// Checks that pairs at odd distance have empty bisectors.
struct OddDistanceReport {
  bool bipartite = false;
  std::size_t odd_pairs = 0;
  std::size_t empty_bisectors = 0;
  std::vector<PointPair> nonempty;  // odd-distance pairs with a non-empty bisector
  /// For bipartite graphs every odd pair must be empty.
  bool holds() const noexcept { return !bipartite || nonempty.empty(); }
};

OddDistanceReport check_odd_distance_bisectors(const Graph& g);

}  // namespace kmetric
