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
#include <numeric>
#include <random>

#include "kmetric/error.hpp"
#include "kmetric/families.hpp"
#include "kmetric/graph.hpp"
#include "kmetric/metric_space.hpp"
#include "kmetric/random_spaces.hpp"
#include "oracles.hpp"

using namespace kmetric;

namespace {

FiniteMetricSpace fam(const char* spec) { return make_space(parse_family(spec)); }

PointIndex at(const FiniteMetricSpace& s, const char* label) { return s.index_of(label).value(); }

PointSet by_label(const FiniteMetricSpace& s, std::initializer_list<const char*> labels) {
  std::vector<PointIndex> idx;
  for (const char* l : labels) idx.push_back(at(s, l));
  return PointSet(std::move(idx));
}

DistanceMatrix ints(std::vector<std::vector<long long>> rows) {
  DistanceMatrix m;
  for (auto& r : rows) {
    std::vector<Rational> row;
    for (auto x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  return m;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no kmetric::Error thrown");
  return ErrorKind::Parse;
}

std::vector<std::string> subjects_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.subjects();
  }
  return {};
}

}  // namespace

TEST_CASE("build_space accepts the discrete metric", "[metric]") {
  auto s = build_space({"a", "b", "c"}, ints({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  CHECK(s.size() == 3);
  CHECK(s.distance(0, 2) == 1);
  CHECK(s.diameter() == 1);
  CHECK(s.warnings().empty());
}

TEST_CASE("build_space reports the offending points", "[metric][errors]") {
  SECTION("asymmetric") {
    auto fn = [] { build_space({"a", "b"}, ints({{0, 1}, {2, 0}})); };
    CHECK(kind_of(fn) == ErrorKind::AsymmetricDistance);
    CHECK(subjects_of(fn) == std::vector<std::string>{"a", "b"});
  }
  SECTION("triangle") {
    auto fn = [] { build_space({"a", "b", "c"}, ints({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}})); };
    CHECK(kind_of(fn) == ErrorKind::TriangleViolation);
    CHECK(subjects_of(fn) == std::vector<std::string>{"a", "b", "c"});
  }
  SECTION("negative") {
    CHECK(kind_of([] { build_space({"a", "b"}, ints({{0, -1}, {-1, 0}})); }) == ErrorKind::NegativeDistance);
  }
  SECTION("zero off-diagonal") {
    CHECK(kind_of([] { build_space({"a", "b"}, ints({{0, 0}, {0, 0}})); }) == ErrorKind::ZeroOffDiagonal);
  }
  SECTION("nonzero diagonal") {
    CHECK(kind_of([] { build_space({"a", "b"}, ints({{1, 1}, {1, 0}})); }) == ErrorKind::NonzeroDiagonal);
  }
  SECTION("duplicate label") {
    auto fn = [] { build_space({"a", "a"}, ints({{0, 1}, {1, 0}})); };
    CHECK(kind_of(fn) == ErrorKind::DuplicateLabel);
    CHECK(subjects_of(fn) == std::vector<std::string>{"a"});
  }
  SECTION("shape") {
    CHECK(kind_of([] { build_space({"a", "b", "c"}, ints({{0, 1}, {1, 0}})); }) == ErrorKind::MatrixShape);
    CHECK(kind_of([] { build_space({"a", "b"}, ints({{0, 1}, {1}})); }) == ErrorKind::MatrixShape);
  }
  SECTION("too few points") {
    CHECK(kind_of([] { build_space({"a"}, ints({{0}})); }) == ErrorKind::TooFewPoints);
  }
}

TEST_CASE("two-point spaces are accepted with a warning", "[metric]") {
  auto s = build_space({"a", "b"}, ints({{0, 3}, {3, 0}}));
  REQUIRE(s.warnings().size() == 1);
  CHECK(max_k(s) == 2);
}

TEST_CASE("rational distances keep exact equality", "[metric]") {
  DistanceMatrix m = {{0, Rational(1, 3), Rational(2, 3)},
                      {Rational(1, 3), 0, Rational(1, 3)},
                      {Rational(2, 3), Rational(1, 3), 0}};
  auto s = build_space({"x", "y", "z"}, m);
  CHECK(bisector(s, 0, 2) == PointSet{1});
  CHECK(bisector(s, 0, 1).empty());
}

TEST_CASE("bisector examples", "[metric][bisector]") {
  auto k5 = fam("complete:5");
  for (PointIndex u = 0; u < 5; ++u)
    for (PointIndex v = u + 1; v < 5; ++v) CHECK(bisector(k5, u, v).size() == 3);

  auto p5 = fam("path:5");
  CHECK(bisector(p5, at(p5, "v1"), at(p5, "v3")) == by_label(p5, {"v2"}));

  auto c8 = fam("cycle:8");
  CHECK(bisector(c8, at(c8, "v0"), at(c8, "v2")) == by_label(c8, {"v1", "v5"}));

  CHECK(kind_of([&] { bisector(p5, 1, 1); }) == ErrorKind::SamePoint);
  CHECK(kind_of([&] { bisector(p5, 1, 9); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("distinguisher examples", "[metric][bisector]") {
  auto k5 = fam("complete:5");
  CHECK(distinguishers(k5, 1, 3) == PointSet{1, 3});

  auto c7 = fam("cycle:7");
  auto d = distinguishers(c7, at(c7, "v0"), at(c7, "v1"));
  CHECK(d.size() == 6);
  CHECK_FALSE(d.contains(at(c7, "v4")));

  auto line = from_line_points({"p", "q", "r"}, {Rational(0), Rational(1), Rational(3)});
  CHECK(distinguishers(line, 0, 1) == PointSet{0, 1, 2});
  CHECK(kind_of([&] { distinguishers(line, 2, 2); }) == ErrorKind::SamePoint);
}

TEST_CASE("all_distinguishers examples", "[metric][bisector]") {
  auto petersen = all_distinguishers(fam("petersen"));
  CHECK(petersen.pairs.size() == 45);
  CHECK(petersen.min_set_size() == 6);

  auto k4 = all_distinguishers(fam("complete:4"));
  REQUIRE(k4.pairs.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) CHECK(k4.sets[i] == PointSet{k4.pairs[i].u, k4.pairs[i].v});

  auto p3 = all_distinguishers(fam("path:3"));
  CHECK(p3.at(0, 1).size() == 3);
  CHECK(p3.at(1, 2).size() == 3);
  CHECK(p3.at(0, 2) == PointSet{0, 2});
  CHECK(p3.pair_index(2, 0) == p3.pair_index(0, 2));
}

TEST_CASE("bisector invariants hold on random spaces", "[metric][property]") {
  InstanceGenerator gen(11);
  for (int round = 0; round < 40; ++round) {
    auto s = gen.mixed(gen.size_between(3, 9));
    auto map = all_distinguishers(s);
    for (std::size_t i = 0; i < map.pairs.size(); ++i) {
      auto [u, v] = map.pairs[i];
      auto b = bisector(s, u, v);
      CHECK(b == bisector(s, v, u));
      CHECK_FALSE(b.contains(u));
      CHECK_FALSE(b.contains(v));
      CHECK(b.intersection_size(map.sets[i]) == 0);
      CHECK(b.size() + map.sets[i].size() == s.size());
      CHECK(map.sets[i].contains(u));
      CHECK(map.sets[i].contains(v));
    }
  }
}

TEST_CASE("is_k_generator certificates", "[metric][generator]") {
  auto p4 = fam("path:4");
  auto cert = is_k_generator(p4, PointSet{at(p4, "v1")}, 1);
  CHECK(cert.valid);
  CHECK_FALSE(cert.witness);

  auto k4 = fam("complete:4");
  auto all = PointSet{0, 1, 2, 3};
  auto bad = is_k_generator(k4, all, 3);
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.witness);
  CHECK(bad.witness->u == 0);
  CHECK(bad.witness->v == 1);
  CHECK(bad.min_coverage == 2);

  // The whole space is a k-generator exactly for k <= max_k.
  InstanceGenerator gen(5);
  for (int round = 0; round < 30; ++round) {
    auto s = gen.mixed(gen.size_between(3, 8));
    std::vector<PointIndex> idx(s.size());
    std::iota(idx.begin(), idx.end(), 0);
    PointSet everything(idx);
    const auto top = max_k(s);
    CHECK(top >= 2);
    CHECK(is_k_generator(s, everything, 2).valid);
    CHECK(is_k_generator(s, everything, top).valid);
    CHECK_FALSE(is_k_generator(s, everything, top + 1).valid);
  }
  CHECK(kind_of([&] { is_k_generator(p4, PointSet{0}, 0); }) == ErrorKind::NonpositiveParameter);
  CHECK(kind_of([&] { is_k_generator(p4, PointSet{7}, 1); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("max_k examples", "[metric][max_k]") {
  CHECK(max_k(fam("petersen")) == 6);
  for (int n = 3; n <= 8; ++n) CHECK(max_k(fam(("complete:" + std::to_string(n)).c_str())) == 2);
  CHECK(max_k(fam("lollipop:5,4")) == 4);
  CHECK(max_k(fam("cycle:7")) == 6);
}

TEST_CASE("truncate caps distances at 2t", "[metric][truncation]") {
  auto p5 = fam("path:5");
  auto t1 = truncate(p5, Rational(1));
  CHECK(t1.distance(at(t1, "v1"), at(t1, "v4")) == 2);
  CHECK(t1.distance(at(t1, "v1"), at(t1, "v2")) == 1);
  CHECK(t1.meta().at("truncation_cap") == "2");

  // Above half the diameter nothing changes.
  auto same = truncate(p5, Rational(2));
  CHECK(same.matrix() == p5.matrix());

  CHECK(truncate(t1, Rational(1)).matrix() == t1.matrix());
  CHECK(kind_of([&] { truncate(p5, Rational(0)); }) == ErrorKind::NonpositiveParameter);
  CHECK(kind_of([&] { truncate_at(p5, Rational(-1)); }) == ErrorKind::NonpositiveParameter);
  CHECK(truncate_at(p5, Rational(2)).matrix() == t1.matrix());
}

TEST_CASE("truncated line segment has the expected bisectors", "[metric][truncation]") {
  std::vector<std::string> labels;
  std::vector<Rational> xs;
  for (int i = 0; i <= 20; ++i) {
    labels.push_back(std::to_string(i));
    xs.emplace_back(i);
  }
  auto t = truncate(from_line_points(labels, xs), Rational(1));
  // B^t(a|b) for a = 10, b = 11: everything at distance >= 2 from both.
  auto b = bisector(t, 10, 11);
  for (PointIndex x = 0; x <= 20; ++x) {
    const bool far = (x <= 8) || (x >= 13);
    CHECK(b.contains(x) == far);
  }
}

TEST_CASE("truncation is idempotent and nests bisectors", "[metric][truncation][property]") {
  InstanceGenerator gen(3);
  for (int round = 0; round < 40; ++round) {
    auto s = gen.mixed(gen.size_between(3, 9));
    for (Rational t : {Rational(1, 2), Rational(1), Rational(2)}) {
      auto once = truncate(s, t);
      CHECK(truncate(once, t).matrix() == once.matrix());
    }
    auto t_small = truncate(s, Rational(1));
    auto t_large = truncate(s, Rational(2));
    for (PointIndex u = 0; u < s.size(); ++u)
      for (PointIndex v = u + 1; v < s.size(); ++v) {
        CHECK(bisector(s, u, v).is_subset_of(bisector(t_large, u, v)));
        CHECK(bisector(t_large, u, v).is_subset_of(bisector(t_small, u, v)));
      }
  }
}

TEST_CASE("join examples", "[metric][join]") {
  auto x1 = from_line_points({"1", "3"}, {Rational(1), Rational(3)});
  auto x2 = from_line_points({"2", "4"}, {Rational(2), Rational(4)});
  auto j = join(x1, x2, Rational(1));
  CHECK(j.size() == 4);
  CHECK(j.distance(at(j, "1"), at(j, "3")) == 2);
  CHECK(j.distance(at(j, "2"), at(j, "4")) == 2);
  CHECK(j.distance(at(j, "1"), at(j, "2")) == 1);
  CHECK(j.distance(at(j, "3"), at(j, "4")) == 1);
  CHECK(bisector(j, at(j, "1"), at(j, "3")) == by_label(j, {"2", "4"}));
  CHECK(bisector(j, at(j, "2"), at(j, "4")) == by_label(j, {"1", "3"}));
  CHECK(bisector(j, at(j, "1"), at(j, "2")).empty());
  CHECK(j.meta().at("join_t") == "1");

  auto a = build_space({"a1", "a2"}, ints({{0, 1}, {1, 0}}));
  auto b = build_space({"b1", "b2"}, ints({{0, 1}, {1, 0}}));
  auto wide = join(a, b, Rational(5));
  CHECK(wide.distance(0, 1) == 1);
  CHECK(wide.distance(0, 2) == 5);

  CHECK(kind_of([&] { join(x1, x1, Rational(1)); }) == ErrorKind::LabelCollision);
  CHECK(kind_of([&] { join(x1, x2, Rational(0)); }) == ErrorKind::NonpositiveParameter);
}

TEST_CASE("relabeling maps bisectors to bisectors", "[metric][property]") {
  InstanceGenerator gen(21);
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    auto s = gen.mixed(gen.size_between(3, 9));
    std::vector<PointIndex> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto p = permute(s, perm);
    CHECK(max_k(p) == max_k(s));
    for (PointIndex u = 0; u < s.size(); ++u) {
      CHECK(p.label(perm[u]) == s.label(u));
      for (PointIndex v = u + 1; v < s.size(); ++v) {
        std::vector<PointIndex> mapped;
        for (PointIndex x : bisector(s, u, v)) mapped.push_back(perm[x]);
        CHECK(bisector(p, perm[u], perm[v]) == PointSet(mapped));
      }
    }
  }
  auto s = fam("path:3");
  std::vector<PointIndex> not_perm = {0, 0, 1};
  CHECK(kind_of([&] { permute(s, not_perm); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("Euclidean ingestion quantizes and records precision", "[metric][euclidean]") {
  auto line = from_euclidean_points({"a", "b", "c"}, {{0.0}, {0.1}, {0.2}});
  CHECK(line.meta().at("quantization_digits") == "12");
  CHECK(bisector(line, 0, 2) == PointSet{1});

  // Unit square: diagonals are equal after quantization, so the centre-free
  // square keeps its symmetric bisectors.
  auto square = from_euclidean_points({"p", "q", "r", "s"}, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 6);
  CHECK(square.meta().at("quantization_digits") == "6");
  CHECK(square.distance(0, 2) == square.distance(1, 3));
  CHECK(bisector(square, 0, 2) == PointSet{1, 3});
}

TEST_CASE("cycle distances agree with the closed form", "[metric][oracle]") {
  for (int n = 3; n <= 12; ++n) {
    auto c = fam(("cycle:" + std::to_string(n)).c_str());
    auto ref = oracle::cycle_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(c.distance(i, j) == ref[i][j]);
  }
}
