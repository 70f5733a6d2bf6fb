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


#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "kmetric/error.hpp"
#include "kmetric/families.hpp"
#include "kmetric/graph.hpp"
#include "kmetric/random_spaces.hpp"
#include "kmetric/solver.hpp"
#include "oracles.hpp"

using namespace kmetric;

namespace {

FiniteMetricSpace fam(const std::string& spec) { return make_space(parse_family(spec)); }

// Replaces each distinct distance by its rank; equality is all the oracle needs.
oracle::IntMatrix ranks(const FiniteMetricSpace& s) {
  std::vector<Rational> values;
  for (PointIndex i = 0; i < s.size(); ++i)
    for (PointIndex j = 0; j < s.size(); ++j) values.push_back(s.distance(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  oracle::IntMatrix d(s.size(), std::vector<long long>(s.size()));
  for (PointIndex i = 0; i < s.size(); ++i)
    for (PointIndex j = 0; j < s.size(); ++j)
      d[i][j] = std::lower_bound(values.begin(), values.end(), s.distance(i, j)) - values.begin();
  return d;
}

ExtendedNat as_ext(std::optional<int> v) { return v ? ExtendedNat(static_cast<std::uint64_t>(*v)) : ExtendedNat::infinity(); }

std::vector<std::uint64_t> finite_entries(const DimensionSequence& seq) {
  std::vector<std::uint64_t> out;
  for (const auto& e : seq.entries) out.push_back(e.value());
  return out;
}

Graph random_tree(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i));
  std::vector<Graph::Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v);
  return Graph(labels, edges);
}

std::vector<std::vector<std::size_t>> adjacency(const Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
  return adj;
}

bool is_path(const Graph& g) {
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

}  // namespace

TEST_CASE("ExtendedNat ordering and arithmetic", "[solver][extended]") {
  constexpr auto inf = ExtendedNat::infinity();
  static_assert(ExtendedNat(3) < inf);
  static_assert(ExtendedNat(3) + ExtendedNat(4) == ExtendedNat(7));
  static_assert(ExtendedNat(3) + inf == inf);
  static_assert(inf == inf);
  CHECK(ExtendedNat(~0ull - 1) < inf);
  CHECK(inf.str() == "inf");
  CHECK(ExtendedNat(12).str() == "12");
  CHECK(ExtendedNat(5).value() == 5);
  CHECK_THROWS_AS(inf.value(), std::logic_error);
}

TEST_CASE("greedy_upper examples", "[solver][greedy]") {
  auto k4 = greedy_upper(fam("complete:4"), 1);
  REQUIRE(k4);
  CHECK(k4->value == 3);
  CHECK(is_k_generator(fam("complete:4"), k4->set, 1).valid);

  CHECK_FALSE(greedy_upper(fam("complete:4"), 3));
  CHECK_FALSE(greedy_upper(fam("petersen"), 7));

  auto c7 = greedy_upper(fam("cycle:7"), 2);
  REQUIRE(c7);
  CHECK(c7->value == 3);
}

TEST_CASE("greedy always returns a valid generator no smaller than the optimum", "[solver][greedy][property]") {
  InstanceGenerator gen(41);
  for (int round = 0; round < 60; ++round) {
    auto s = gen.mixed(gen.size_between(3, 10));
    for (std::size_t k = 1; k <= max_k(s); ++k) {
      auto g = greedy_upper(s, k);
      REQUIRE(g);
      CHECK(g->set.size() == g->value);
      CHECK(is_k_generator(s, g->set, k).valid);
      CHECK(ExtendedNat(g->value) >= dim_exact(s, k).optimum);
    }
  }
}

TEST_CASE("dim_exact examples", "[solver][exact]") {
  auto pet = fam("petersen");
  auto r = dim_exact(pet, 3);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == ExtendedNat(7));
  REQUIRE(r.basis);
  CHECK(r.basis->size() == 7);
  CHECK(is_k_generator(pet, *r.basis, 3).valid);
  CHECK(r.canonical_basis);

  CHECK(dim_exact(fam("path:6"), 3).optimum == ExtendedNat(4));
  CHECK(dim_exact(fam("cycle:8"), 4).optimum == ExtendedNat(6));

  auto inf = dim_exact(fam("complete:5"), 3);
  CHECK(inf.status == SolveStatus::Infeasible);
  CHECK(inf.optimum == ExtendedNat::infinity());
  CHECK_FALSE(inf.basis);

  CHECK_THROWS_AS(dim_exact(pet, 0), Error);
}

TEST_CASE("lower-bound trace records every bound source", "[solver][exact]") {
  SolveOptions opts;
  opts.lower_bound_hint = 5;
  auto r = dim_exact(fam("petersen"), 3, opts);
  std::map<std::string, std::uint64_t> trace;
  for (const auto& b : r.lower_bound_trace) trace[b.source] = b.value;
  CHECK(trace.at("k") == 3);
  CHECK(trace.at("previous_level") == 5);
  CHECK(trace.count("packing") == 1);
  CHECK(trace.count("block_packing") == 1);
  CHECK(trace.at("greedy") >= 7);
  CHECK(r.lower_bound == 7);
  CHECK(r.optimum == ExtendedNat(7));
}

TEST_CASE("dim_bruteforce examples", "[solver][bruteforce]") {
  CHECK(dim_bruteforce(fam("complete:5"), 2) == ExtendedNat(5));
  CHECK(dim_bruteforce(fam("lollipop:5,4"), 4) == ExtendedNat(5));
  CHECK(dim_bruteforce(fam("sqrt-primes:6"), 3) == ExtendedNat(3));
  CHECK(dim_bruteforce(fam("complete:5"), 3) == ExtendedNat::infinity());
  try {
    (void)dim_bruteforce(fam("path:17"), 1);
    FAIL("no InstanceTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InstanceTooLarge);
  }
  CHECK(dim_bruteforce(fam("path:17"), 1, 17) == ExtendedNat(1));
}

TEST_CASE("dimension_sequence examples", "[solver][sequence]") {
  auto pet = dimension_sequence(fam("petersen"));
  CHECK(finite_entries(pet) == std::vector<std::uint64_t>{3, 4, 7, 8, 9, 10});
  CHECK(pet.tail_start == 7u);
  CHECK(pet.all_optimal());
  CHECK(pet.at(7) == ExtendedNat::infinity());
  CHECK(pet.at(100) == ExtendedNat::infinity());
  CHECK(pet.at(3) == ExtendedNat(7));

  auto k6 = dimension_sequence(fam("complete:6"));
  CHECK(finite_entries(k6) == std::vector<std::uint64_t>{5, 6});
  CHECK(k6.tail_start == 3u);

  auto c7 = dimension_sequence(fam("cycle:7"));
  CHECK(finite_entries(c7) == std::vector<std::uint64_t>{2, 3, 4, 5, 6, 7});
  CHECK(c7.tail_start == 7u);

  auto prefix = dimension_sequence(fam("petersen"), 2);
  CHECK(finite_entries(prefix) == std::vector<std::uint64_t>{3, 4});
  CHECK(prefix.tail_start == 7u);
  CHECK_FALSE(prefix.at(4));
}

TEST_CASE("paths and cycles match the bitmask oracle and the closed forms", "[solver][oracle]") {
  for (int n = 2; n <= 12; ++n) {
    INFO("path " << n);
    auto seq = dimension_sequence(fam("path:" + std::to_string(n)));
    auto ref = oracle::path_matrix(n);
    for (std::size_t k = 1; k <= seq.entries.size() + 1; ++k) CHECK(*seq.at(k) == as_ext(oracle::dim(ref, k)));
    std::vector<std::uint64_t> closed = {1, 2};
    if (n >= 4)
      for (int k = 3; k <= n - 1; ++k) closed.push_back(k + 1);
    CHECK(finite_entries(seq) == closed);
  }
  for (int n = 3; n <= 12; ++n) {
    INFO("cycle " << n);
    auto seq = dimension_sequence(fam("cycle:" + std::to_string(n)));
    auto ref = oracle::cycle_matrix(n);
    for (std::size_t k = 1; k <= seq.entries.size() + 1; ++k) CHECK(*seq.at(k) == as_ext(oracle::dim(ref, k)));
    std::vector<std::uint64_t> closed;
    if (n % 2 == 1) {
      for (int k = 1; k <= n - 1; ++k) closed.push_back(k + 1);
    } else {
      const int q = n / 2;
      for (int k = 2; k <= q; ++k) closed.push_back(k);
      for (int k = q + 2; k <= 2 * q; ++k) closed.push_back(k);
    }
    CHECK(finite_entries(seq) == closed);
  }
}

TEST_CASE("dim_exact, dim_bruteforce and the bitmask oracle agree on random spaces", "[solver][oracle][property]") {
  InstanceGenerator gen(7);
  for (int round = 0; round < 80; ++round) {
    auto s = round % 3 == 0 ? gen.rational_metric(gen.size_between(3, 11))
                            : shortest_path_metric(gen.connected_graph(gen.size_between(3, 12)));
    auto ref = ranks(s);
    const auto map = all_distinguishers(s);
    for (std::size_t k = 1; k <= max_k(map) + 1; ++k) {
      const auto exact = dim_exact(map, k);
      const auto want = as_ext(oracle::dim(ref, static_cast<int>(k)));
      CHECK(exact.optimum == want);
      CHECK(dim_bruteforce(s, k) == want);
      if (exact.basis) CHECK(is_k_generator(map, *exact.basis, k).valid);
    }
  }
}

TEST_CASE("tree metric dimension matches the legs formula", "[solver][oracle][trees]") {
  // Free-group balls: 3, 8, 24.
  const std::uint64_t frozen[] = {3, 8, 24};
  for (long long r = 1; r <= 3; ++r) {
    auto g = std::get<Graph>(make(parse_family("free-ball:2," + std::to_string(r))));
    const int legs = oracle::tree_dim1_by_legs(adjacency(g));
    CHECK(static_cast<std::uint64_t>(legs) == frozen[r - 1]);
    CHECK(dim_exact(shortest_path_metric(g), 1).optimum == ExtendedNat(frozen[r - 1]));
  }
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    auto g = random_tree(rng, std::uniform_int_distribution<std::size_t>(4, 30)(rng));
    if (is_path(g)) continue;
    ++checked;
    const int legs = oracle::tree_dim1_by_legs(adjacency(g));
    CHECK(dim_exact(shortest_path_metric(g), 1).optimum == ExtendedNat(static_cast<std::uint64_t>(legs)));
  }
  CHECK(checked > 40);
}

TEST_CASE("sequential mode returns the lexicographically smallest optimal basis", "[solver][canonical]") {
  InstanceGenerator gen(13);
  for (int round = 0; round < 40; ++round) {
    auto s = gen.mixed(gen.size_between(3, 9));
    const auto map = all_distinguishers(s);
    for (std::size_t k = 1; k <= max_k(map); ++k) {
      auto r = dim_exact(map, k);
      REQUIRE(r.basis);
      // Smallest optimal set by brute force: subsets of that size in lexicographic order.
      const std::size_t n = s.size(), m = r.basis->size();
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + m, true);
      std::optional<PointSet> first;
      do {
        std::vector<PointIndex> idx;
        for (std::size_t i = 0; i < n; ++i)
          if (pick[i]) idx.push_back(i);
        PointSet cand(idx);
        if (is_k_generator(map, cand, k).valid) {
          first = cand;
          break;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
      REQUIRE(first);
      CHECK(*r.basis == *first);
    }
  }
}

TEST_CASE("parallel mode finds the same optimum", "[solver][parallel]") {
  SolveOptions par;
  par.parallel = true;
  par.threads = 3;
  for (const char* spec : {"petersen", "cycle:10", "grid-ball:2,3", "lollipop:5,4", "free-ball:2,2"}) {
    auto s = fam(spec);
    for (std::size_t k = 1; k <= std::min<std::size_t>(max_k(s) + 1, 4); ++k) {
      INFO(spec << " k=" << k);
      auto a = dim_exact(s, k);
      auto b = dim_exact(s, k, par);
      CHECK(a.optimum == b.optimum);
      if (b.basis) CHECK(is_k_generator(s, *b.basis, k).valid);
    }
  }
  InstanceGenerator gen(31);
  for (int round = 0; round < 20; ++round) {
    auto s = gen.mixed(gen.size_between(6, 14));
    for (std::size_t k = 1; k <= max_k(s); ++k) CHECK(dim_exact(s, k).optimum == dim_exact(s, k, par).optimum);
  }
}

TEST_CASE("an exhausted budget yields sound bounds", "[solver][budget]") {
  SolveOptions tiny;
  tiny.budget_secs = 1e-9;
  InstanceGenerator gen(3);
  int bounded = 0;
  for (int round = 0; round < 6; ++round) {
    auto s = shortest_path_metric(gen.connected_graph(60));
    auto r = dim_exact(s, 2, tiny);
    REQUIRE(r.basis);
    CHECK(is_k_generator(s, *r.basis, 2).valid);
    CHECK(r.basis->size() == r.optimum.value());
    CHECK(ExtendedNat(r.lower_bound) <= r.optimum);
    if (r.status == SolveStatus::Bounded) {
      ++bounded;
      CHECK(ExtendedNat(r.lower_bound) < r.optimum);
    }
  }
  CHECK(bounded > 0);
}

TEST_CASE("sequences are monotone and bounded on random spaces", "[solver][sequence][property]") {
  InstanceGenerator gen(37);
  for (int round = 0; round < 50; ++round) {
    auto s = gen.mixed(gen.size_between(3, 10));
    auto seq = dimension_sequence(s);
    REQUIRE(seq.all_optimal());
    CHECK(seq.tail_start == max_k(s) + 1);
    for (std::size_t k = 1; k <= seq.entries.size(); ++k) {
      const auto v = seq.entries[k - 1].value();
      CHECK(v >= k);
      CHECK(v <= s.size());
      CHECK(v + 1 >= seq.entries[0].value() + k);
      if (k > 1) CHECK(v >= seq.entries[k - 2].value() + 1);
    }
  }
}

TEST_CASE("optimum is invariant under relabeling and bases map to bases", "[solver][property]") {
  InstanceGenerator gen(43);
  std::mt19937_64 rng(43);
  for (int round = 0; round < 30; ++round) {
    auto s = gen.mixed(gen.size_between(3, 10));
    std::vector<PointIndex> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto p = permute(s, perm);
    for (std::size_t k = 1; k <= max_k(s) + 1; ++k) {
      auto a = dim_exact(s, k);
      auto b = dim_exact(p, k);
      CHECK(a.optimum == b.optimum);
      if (!a.basis) continue;
      std::vector<PointIndex> image;
      for (PointIndex x : *a.basis) image.push_back(perm[x]);
      CHECK(is_k_generator(p, PointSet(image), k).valid);
    }
  }
}

TEST_CASE("larger instances solve within the default budget", "[solver][scale]") {
  auto r = dim_exact(fam("free-ball:2,3"), 1);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.optimum == ExtendedNat(24));
  auto g = dimension_sequence(fam("grid-ball:2,4"), 3);
  CHECK(g.all_optimal());
  CHECK(g.entries[0] == ExtendedNat(3));
}
