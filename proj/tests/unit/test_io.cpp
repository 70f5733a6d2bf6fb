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

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "kmetric/error.hpp"
#include "kmetric/families.hpp"
#include "kmetric/io.hpp"
#include "kmetric/random_spaces.hpp"

using namespace kmetric;
using nlohmann::json;

TEST_CASE("metric-space JSON round-trips exactly", "[io]") {
  InstanceGenerator gen(2);
  for (int round = 0; round < 20; ++round) {
    auto s = gen.mixed(gen.size_between(2, 8));
    auto text = space_to_json(s);
    auto back = space_from_json(text);
    CHECK(back.labels() == s.labels());
    CHECK(back.matrix() == s.matrix());
    CHECK(space_to_json(back) == text);
  }
}

TEST_CASE("metric-space JSON layout", "[io]") {
  DistanceMatrix m = {{0, Rational(3, 2)}, {Rational(3, 2), 0}};
  auto s = build_space({"b", "a"}, m, {{"zeta", "1"}, {"alpha", "2"}});
  auto doc = json::parse(space_to_json(s));
  CHECK(doc["labels"] == json({"b", "a"}));
  CHECK(doc["distances"][0][1] == "3/2");
  CHECK(doc["meta"].begin().key() == "alpha");
}

TEST_CASE("space_from_json accepts strings, integers and floats", "[io]") {
  auto s = space_from_json(R"({"labels":["a","b","c"],"distances":[[0,"1/2",1],["0.5",0,"0.5"],[1,0.5,0]]})");
  CHECK(s.distance(0, 1) == Rational(1, 2));
  CHECK(s.distance(2, 1) == Rational(1, 2));
  CHECK(s.meta().at("quantization_digits") == "12");

  auto exact = space_from_json(R"({"labels":["a","b"],"distances":[["0","2"],["2","0"]]})");
  CHECK(exact.meta().count("quantization_digits") == 0);

  CHECK_THROWS_AS(space_from_json("{"), Error);
  CHECK_THROWS_AS(space_from_json(R"({"labels":["a","b"]})"), Error);
  CHECK_THROWS_AS(space_from_json(R"({"labels":["a","b"],"distances":[["0","x"],["x","0"]]})"), Error);
  CHECK_THROWS_AS(space_from_json(R"({"labels":["a","b"],"distances":[["0","1"],["2","0"]]})"), Error);
}

TEST_CASE("load_space dispatches on the file extension", "[io]") {
  auto json_space = load_space(std::filesystem::path(KMETRIC_DATA_DIR) / "line_x1.json");
  CHECK(json_space.labels() == std::vector<std::string>{"1", "3"});
  auto edges = load_space(std::filesystem::path(KMETRIC_DATA_DIR) / "petersen.edges");
  CHECK(edges.size() == 10);
  CHECK(edges.diameter() == 2);
  CHECK_THROWS_AS(load_space("/nonexistent/space.json"), Error);
}

TEST_CASE("solve reports serialize deterministically", "[io]") {
  auto s = make_space(parse_family("petersen"));
  auto r = dim_exact(s, 2);
  auto a = solve_report_to_json(r, s);
  auto b = solve_report_to_json(dim_exact(s, 2), s);
  CHECK(a == b);
  auto doc = json::parse(a);
  CHECK(doc["optimum"] == 4);
  CHECK(doc["status"] == "optimal");
  CHECK(doc["basis_labels"].size() == 4);
  CHECK_FALSE(doc.contains("elapsed_secs"));
  CHECK(json::parse(solve_report_to_json(r, s, true)).contains("elapsed_secs"));

  auto inf = json::parse(solve_report_to_json(dim_exact(s, 7), s));
  CHECK(inf["optimum"] == "inf");
  CHECK(inf["basis"].is_null());
}

TEST_CASE("sequence CSV uses an inf row for the tail", "[io]") {
  auto seq = dimension_sequence(make_space(parse_family("complete:4")));
  CHECK(sequence_to_csv(seq) == "k,dim_k\n1,3\n2,4\n3,inf\n");
}
