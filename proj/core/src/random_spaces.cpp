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

#include "kmetric/random_spaces.hpp"

#include <numeric>
#include <string>

namespace kmetric {
namespace {

bool connected(std::size_t n, const std::vector<Graph::Edge>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (auto [a, b] : edges) {
    auto ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

std::vector<std::string> names(std::string_view prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace

std::size_t InstanceGenerator::size_between(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

Graph InstanceGenerator::connected_graph(std::size_t n) {
  const double p = std::uniform_real_distribution<double>(0.2, 0.7)(rng_);
  std::bernoulli_distribution coin(p);
  while (true) {
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng_)) edges.emplace_back(i, j);
    if (connected(n, edges)) return Graph(names("g", n), edges);
  }
}

Graph InstanceGenerator::connected_bipartite_graph(std::size_t n) {
  const double p = std::uniform_real_distribution<double>(0.3, 0.8)(rng_);
  std::bernoulli_distribution coin(p);
  std::bernoulli_distribution side(0.5);
  while (true) {
    std::vector<int> part(n);
    for (auto& s : part) s = side(rng_) ? 1 : 0;
    std::vector<Graph::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (part[i] != part[j] && coin(rng_)) edges.emplace_back(i, j);
    if (connected(n, edges)) return Graph(names("b", n), edges);
  }
}

FiniteMetricSpace InstanceGenerator::rational_metric(std::size_t n) {
  std::uniform_int_distribution<int> numerator(1, 8);
  std::uniform_int_distribution<int> denominator(1, 3);
  DistanceMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      int a = numerator(rng_);
      int b = denominator(rng_);
      m[i][j] = m[j][i] = Rational(a, b);
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = m[i][k] + m[k][j];
        if (i != j && via < m[i][j]) m[i][j] = via;
      }
  return build_space(names("x", n), m, {{"source", "random-rational"}});
}

FiniteMetricSpace InstanceGenerator::mixed(std::size_t n) {
  if (draws_++ % 2 == 0) return shortest_path_metric(connected_graph(n));
  return rational_metric(n);
}

}  // namespace kmetric
