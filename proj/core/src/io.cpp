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

#include "kmetric/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kmetric/error.hpp"
#include "kmetric/graph.hpp"

namespace kmetric {
namespace {

using nlohmann::json;

[[noreturn]] void bad_json(const std::string& why) { throw Error(ErrorKind::Parse, "metric-space JSON: " + why); }

nlohmann::json report_json(const SolveReport& report, const FiniteMetricSpace& space, bool include_timing) {
  json j;
  j["k"] = report.k;
  j["status"] = to_string(report.status);
  j["optimum"] = report.optimum.is_finite() ? json(report.optimum.value()) : json("inf");
  j["lower_bound"] = report.lower_bound;
  j["nodes_explored"] = report.nodes_explored;
  j["greedy_value"] = report.greedy_value ? json(*report.greedy_value) : json(nullptr);
  j["canonical_basis"] = report.canonical_basis;
  json trace = json::array();
  for (const auto& b : report.lower_bound_trace) trace.push_back({{"source", b.source}, {"value", b.value}});
  j["lower_bound_trace"] = trace;
  if (report.basis) {
    json idx = json::array();
    json labels = json::array();
    for (auto p : *report.basis) {
      idx.push_back(p);
      labels.push_back(space.label(p));
    }
    j["basis"] = idx;
    j["basis_labels"] = labels;
  } else {
    j["basis"] = nullptr;
    j["basis_labels"] = nullptr;
  }
  if (include_timing) j["elapsed_secs"] = report.elapsed_secs;
  return j;
}

}  // namespace

std::string space_to_json(const FiniteMetricSpace& space, int indent) {
  json j;
  j["labels"] = space.labels();
  json rows = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < space.size(); ++k) row.push_back(format_rational(space.distance(i, k)));
    rows.push_back(std::move(row));
  }
  j["distances"] = std::move(rows);
  json meta = json::object();
  for (const auto& [k, v] : space.meta()) meta[k] = v;
  j["meta"] = std::move(meta);
  return j.dump(indent);
}

FiniteMetricSpace space_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad_json(e.what());
  }
  if (!j.is_object()) bad_json("top level must be an object");
  if (!j.contains("labels") || !j["labels"].is_array()) bad_json("missing 'labels' array");
  if (!j.contains("distances") || !j["distances"].is_array()) bad_json("missing 'distances' array");

  Metadata meta;
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) bad_json("'meta' must be an object");
    for (const auto& [k, v] : j["meta"].items()) meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  int digits = kDefaultQuantizationDigits;
  if (auto it = meta.find("quantization_digits"); it != meta.end()) {
    try {
      digits = std::stoi(it->second);
    } catch (const std::exception&) {
      bad_json("meta.quantization_digits must be an integer");
    }
  }

  std::vector<std::string> labels;
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) bad_json("labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  bool quantized = false;
  DistanceMatrix m;
  for (const auto& row : j["distances"]) {
    if (!row.is_array()) bad_json("each distance row must be an array");
    std::vector<Rational> r;
    for (const auto& cell : row) {
      if (cell.is_string()) {
        r.push_back(parse_rational(cell.get<std::string>()));
      } else if (cell.is_number_integer()) {
        r.push_back(parse_rational(cell.dump()));
      } else if (cell.is_number_float()) {
        r.push_back(quantize(cell.get<double>(), digits));
        quantized = true;
      } else {
        bad_json("distances must be strings or numbers");
      }
    }
    m.push_back(std::move(r));
  }
  if (quantized) meta["quantization_digits"] = std::to_string(digits);
  return build_space(std::move(labels), m, std::move(meta));
}

FiniteMetricSpace load_space(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'", {path.string()});
  if (path.extension() == ".json") {
    std::stringstream buffer;
    buffer << in.rdbuf();
    return space_from_json(buffer.str());
  }
  return shortest_path_metric(parse_edge_list(in));
}

std::string solve_report_to_json(const SolveReport& report, const FiniteMetricSpace& space, bool include_timing) {
  return report_json(report, space, include_timing).dump(2);
}

std::string sequence_to_csv(const DimensionSequence& sequence) {
  std::ostringstream out;
  out << "k,dim_k\n";
  for (std::size_t k = 1; k <= sequence.entries.size(); ++k) out << k << ',' << sequence.entries[k - 1].str() << '\n';
  if (sequence.tail_start) out << *sequence.tail_start << ",inf\n";
  return out.str();
}

}  // namespace kmetric
