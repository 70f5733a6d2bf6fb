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

#include "kmetric/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "kmetric/error.hpp"

namespace kmetric {

Graph::Graph(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& edges)
    : labels_(std::move(labels)), adjacency_(labels_.size()) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index.emplace(labels_[i], i).second) {
      throw Error(ErrorKind::DuplicateLabel, "vertex '" + labels_[i] + "' declared twice", {labels_[i]});
    }
  }
  std::vector<Edge> indexed;
  indexed.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end()) throw Error(ErrorKind::UnknownVertex, "edge endpoint '" + a + "' is not a vertex", {a});
    if (ib == index.end()) throw Error(ErrorKind::UnknownVertex, "edge endpoint '" + b + "' is not a vertex", {b});
    indexed.emplace_back(ia->second, ib->second);
  }
  add_edges(indexed);
}

Graph::Graph(std::vector<std::string> labels, const std::vector<Edge>& edges)
    : labels_(std::move(labels)), adjacency_(labels_.size()) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, "vertex '" + l + "' declared twice", {l});
  }
  add_edges(edges);
}

void Graph::add_edges(const std::vector<Edge>& edges) {
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a >= labels_.size() || b >= labels_.size()) {
      throw Error(ErrorKind::UnknownVertex, "edge endpoint index out of range");
    }
    if (a == b) throw Error(ErrorKind::SelfLoop, "self-loop at '" + labels_[a] + "'", {labels_[a]});
    Edge e = std::minmax(a, b);
    if (!seen.insert(e).second) {
      throw Error(ErrorKind::DuplicateEdge, "edge " + labels_[e.first] + "-" + labels_[e.second] + " listed twice",
                  {labels_[e.first], labels_[e.second]});
    }
    edges_.push_back(e);
    adjacency_[e.first].push_back(e.second);
    adjacency_[e.second].push_back(e.first);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::vector<std::optional<std::size_t>> Graph::distances_from(std::size_t source) const {
  std::vector<std::optional<std::size_t>> dist(vertex_count());
  std::deque<std::size_t> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adjacency_[v]) {
      if (!dist[w]) {
        dist[w] = *dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::string, std::string>> edges;
  auto declare = [&](const std::string& v) {
    if (index.emplace(v, labels.size()).second) labels.push_back(v);
  };

  std::string line;
  std::size_t line_no = 0;
  bool seen_edge = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first)) continue;
    if (first == "vertices:") {
      if (seen_edge) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": vertices header must precede edges");
      }
      std::string v;
      while (tokens >> v) {
        if (index.count(v)) throw Error(ErrorKind::DuplicateLabel, "vertex '" + v + "' declared twice", {v});
        declare(v);
      }
      continue;
    }
    std::string second, extra;
    if (!(tokens >> second) || (tokens >> extra)) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected exactly two vertices");
    }
    seen_edge = true;
    declare(first);
    declare(second);
    edges.emplace_back(first, second);
  }
  return Graph(std::move(labels), edges);
}

Graph parse_edge_list_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

FiniteMetricSpace shortest_path_metric(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "graph needs at least 2 vertices");
  DistanceMatrix m(n, std::vector<Rational>(n));
  for (std::size_t s = 0; s < n; ++s) {
    auto dist = g.distances_from(s);
    for (std::size_t t = 0; t < n; ++t) {
      if (!dist[t]) {
        throw Error(ErrorKind::DisconnectedGraph,
                    "vertices '" + g.labels()[s] + "' and '" + g.labels()[t] + "' lie in different components",
                    {g.labels()[s], g.labels()[t]});
      }
      m[s][t] = Rational(static_cast<long long>(*dist[t]));
    }
  }
  return build_space(g.labels(), m, {{"source", "graph"}});
}

BipartiteCheck is_bipartite(const Graph& g) {
  const std::size_t n = g.vertex_count();
  BipartiteCheck out;
  std::vector<int> color(n, -1);
  std::vector<std::size_t> parent(n, n);
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          parent[w] = v;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          // Same-colour edge: tree paths to the common ancestor plus this
          // edge form an odd cycle.
          std::vector<std::size_t> left{v}, right{w};
          std::size_t a = v, b = w;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();  // common ancestor already in `left`
          out.odd_cycle = left;
          out.odd_cycle.insert(out.odd_cycle.end(), right.rbegin(), right.rend());
          return out;
        }
      }
    }
  }
  out.bipartite = true;
  out.coloring = std::move(color);
  return out;
}

OddDistanceReport check_odd_distance_bisectors(const Graph& g) {
  const FiniteMetricSpace space = shortest_path_metric(g);
  OddDistanceReport report;
  report.bipartite = is_bipartite(g).bipartite;
  const std::size_t n = space.size();
  for (PointIndex u = 0; u < n; ++u) {
    for (PointIndex v = u + 1; v < n; ++v) {
      if (boost::multiprecision::numerator(space.distance(u, v)) % 2 == 0) continue;
      ++report.odd_pairs;
      if (bisector(space, u, v).empty()) {
        ++report.empty_bisectors;
      } else {
        report.nonempty.push_back({u, v});
      }
    }
  }
  return report;
}

}  // namespace kmetric
