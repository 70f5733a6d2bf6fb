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


#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string_view>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "kmetric/error.hpp"
#include "kmetric/families.hpp"
#include "kmetric/graph.hpp"
#include "kmetric/io.hpp"
#include "kmetric/metric_space.hpp"
#include "kmetric/random_spaces.hpp"
#include "kmetric/solver.hpp"
#include "kmetric/verify.hpp"

namespace kmetric::cli {
namespace {

using nlohmann::json;

struct Source {
  std::string name;
  FiniteMetricSpace space;
  std::optional<Graph> graph;
  std::optional<FamilySpec> family;
};

Source from_family(const std::string& text) {
  FamilySpec spec = parse_family(text);
  auto built = make(spec);
  std::optional<Graph> graph;
  if (auto* g = std::get_if<Graph>(&built)) graph = *g;
  return Source{spec.str(), make_space(spec), std::move(graph), spec};
}

Source from_file(const std::string& path) {
  std::filesystem::path p(path);
  if (p.extension() == ".json") return Source{path, load_space(p), std::nullopt, std::nullopt};
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  Graph g = parse_edge_list(in);
  FiniteMetricSpace space = shortest_path_metric(g);
  return Source{path, std::move(space), std::move(g), std::nullopt};
}

// Families first, then files, each in command-line order.
std::vector<Source> load_sources(const RunConfig& config) {
  std::vector<Source> out;
  for (const auto& f : config.families) out.push_back(from_family(f));
  for (const auto& i : config.inputs) out.push_back(from_file(i));
  return out;
}

Source single_source(const RunConfig& config) {
  auto sources = load_sources(config);
  if (sources.size() != 1) {
    throw Error(ErrorKind::Parse, "expected exactly one --family or --input, got " + std::to_string(sources.size()));
  }
  return std::move(sources.front());
}

SolveOptions solve_options(const RunConfig& config) {
  SolveOptions opts;
  opts.budget_secs = config.budget_secs;
  opts.parallel = config.parallel;
  opts.threads = config.threads;
  return opts;
}

Rational parse_positive(const std::string& text, std::string_view flag) {
  Rational value = parse_rational(text);
  if (value <= 0) throw Error(ErrorKind::NonpositiveParameter, std::string(flag) + " must be positive");
  return value;
}

json ext_json(const ExtendedNat& v) { return v.is_finite() ? json(v.value()) : json("inf"); }

std::string labels_of(const FiniteMetricSpace& space, const PointSet& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? ", " : "") + space.label(set[i]);
  return s + "}";
}

json labels_json(const FiniteMetricSpace& space, const PointSet& set) {
  json arr = json::array();
  for (PointIndex p : set) arr.push_back(space.label(p));
  return arr;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json header(std::string_view command) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = command;
  return doc;
}

// ---- analyze ---------------------------------------------------------------

int analyze_impl(const RunConfig& config, std::ostream& out) {
  const Source src = single_source(config);
  const FiniteMetricSpace& space = src.space;
  const DistinguisherMap map = all_distinguishers(space);
  const std::size_t top = max_k(map);
  const std::size_t k = config.k.value_or(1);
  if (k == 0) throw Error(ErrorKind::NonpositiveParameter, "--k must be at least 1");
  const SolveReport report = dim_exact(map, k, solve_options(config));
  std::optional<KGeneratorCertificate> cert;
  if (report.basis) cert = is_k_generator(map, *report.basis, k);

  switch (config.format) {
    case Format::Json: {
      json doc = header("analyze");
      doc["source"] = src.name;
      doc["points"] = space.size();
      doc["max_k"] = top;
      doc["warnings"] = space.warnings();
      doc["k"] = k;
      doc["dim_k"] = ext_json(report.optimum);
      doc["report"] = json::parse(solve_report_to_json(report, space, config.timings));
      if (cert) doc["certificate"] = {{"valid", cert->valid}, {"min_coverage", cert->min_coverage}};
      else doc["certificate"] = nullptr;
      if (config.bisectors) {
        json rows = json::array();
        for (std::size_t i = 0; i < map.pairs.size(); ++i) {
          auto [u, v] = map.pairs[i];
          rows.push_back({{"u", space.label(u)}, {"v", space.label(v)}, {"bisector", labels_json(space, bisector(space, u, v))}});
        }
        doc["bisectors"] = rows;
      }
      emit(out, doc);
      break;
    }
    case Format::Csv:
      out << "k,dim_k\n" << k << ',' << report.optimum.str() << '\n';
      break;
    case Format::Plain:
      out << "source: " << src.name << " (" << space.size() << " points)\n";
      for (const auto& w : space.warnings()) out << "warning: " << w << '\n';
      out << "max_k: " << top << '\n';
      out << "dim_" << k << " = " << report.optimum.str() << "  [" << to_string(report.status) << "]\n";
      if (report.status == SolveStatus::Bounded) {
        out << "bounds: [" << report.lower_bound << ", " << report.optimum.str() << "]\n";
      }
      if (report.basis) out << "basis: " << labels_of(space, *report.basis) << '\n';
      if (cert) {
        out << "certificate: " << (cert->valid ? "valid" : "INVALID") << ", min coverage " << cert->min_coverage
            << '\n';
      }
      out << "nodes: " << report.nodes_explored << '\n';
      if (config.timings) out << "elapsed: " << report.elapsed_secs << " s\n";
      if (config.bisectors) {
        for (auto [u, v] : map.pairs) {
          out << "B(" << space.label(u) << '|' << space.label(v) << ") = " << labels_of(space, bisector(space, u, v))
              << '\n';
        }
      }
      break;
  }
  return report.status == SolveStatus::Bounded ? kExitBounded : kExitOk;
}

// ---- sequence --------------------------------------------------------------

struct Verdict {
  std::size_t k;
  std::optional<ExtendedNat> computed;
  std::optional<ExtendedNat> expected;
  std::string verdict;  // PASS, FAIL, UNKNOWN
};

std::vector<Verdict> compare(const DimensionSequence& seq, const std::optional<ExpectedSequence>& expected,
                             bool reached_tail) {
  std::vector<Verdict> rows;
  for (std::size_t k = 1; k <= seq.entries.size(); ++k) {
    Verdict row{k, seq.entries[k - 1], std::nullopt, "UNKNOWN"};
    if (expected) {
      if (k <= expected->entries.size() && expected->entries[k - 1]) {
        row.expected = *expected->entries[k - 1];
      } else if (expected->tail_start && k >= *expected->tail_start) {
        row.expected = ExtendedNat::infinity();
      }
      if (row.expected) row.verdict = *row.expected == *row.computed ? "PASS" : "FAIL";
    }
    rows.push_back(row);
  }
  // The tail row compares where infinity begins.
  if (reached_tail && seq.tail_start) {
    const std::size_t k = *seq.tail_start;
    Verdict row{k, ExtendedNat::infinity(), std::nullopt, "UNKNOWN"};
    if (expected) {
      if (expected->tail_start) {
        row.expected = k >= *expected->tail_start ? ExtendedNat::infinity() : ExtendedNat(0);
        if (k < *expected->tail_start && k <= expected->entries.size() && expected->entries[k - 1]) {
          row.expected = *expected->entries[k - 1];
        }
        row.verdict = (*expected->tail_start == k) ? "PASS" : "FAIL";
      } else if (k <= expected->entries.size() && expected->entries[k - 1]) {
        row.expected = *expected->entries[k - 1];
        row.verdict = "FAIL";
      }
    }
    rows.push_back(row);
  }
  return rows;
}

int sequence_impl(const RunConfig& config, std::ostream& out) {
  const Source src = single_source(config);
  const FiniteMetricSpace& space = src.space;
  const std::size_t top = max_k(space);
  if (config.k_max && *config.k_max == 0) throw Error(ErrorKind::NonpositiveParameter, "--k-max must be at least 1");
  const DimensionSequence seq = dimension_sequence(space, config.k_max, solve_options(config));
  const bool reached_tail = seq.entries.size() >= top;
  std::optional<ExpectedSequence> expected;
  if (src.family) expected = expected_sequence(*src.family);
  const auto rows = compare(seq, expected, reached_tail);

  const bool bounded = !seq.all_optimal();
  const bool mismatch = std::any_of(rows.begin(), rows.end(), [](const Verdict& v) { return v.verdict == "FAIL"; });
  const bool known = std::any_of(rows.begin(), rows.end(), [](const Verdict& v) { return v.verdict != "UNKNOWN"; });
  const std::string overall = mismatch ? "FAIL" : (known ? "PASS" : "UNKNOWN");

  switch (config.format) {
    case Format::Json: {
      json doc = header("sequence");
      doc["source"] = src.name;
      doc["points"] = space.size();
      doc["max_k"] = top;
      json entries = json::array();
      for (const auto& e : seq.entries) entries.push_back(ext_json(e));
      doc["entries"] = entries;
      doc["tail_start"] = seq.tail_start ? json(*seq.tail_start) : json(nullptr);
      json cmp = json::array();
      for (const auto& r : rows) {
        cmp.push_back({{"k", r.k},
                       {"computed", r.computed ? ext_json(*r.computed) : json(nullptr)},
                       {"expected", r.expected ? ext_json(*r.expected) : json(nullptr)},
                       {"verdict", r.verdict}});
      }
      doc["comparison"] = cmp;
      doc["verdict"] = overall;
      json reports = json::array();
      for (const auto& r : seq.reports) reports.push_back(json::parse(solve_report_to_json(r, space, config.timings)));
      doc["reports"] = reports;
      emit(out, doc);
      break;
    }
    case Format::Csv:
      out << sequence_to_csv(seq);
      break;
    case Format::Plain: {
      out << "source: " << src.name << " (" << space.size() << " points), max_k " << top << '\n';
      out << std::left << std::setw(6) << "k" << std::setw(10) << "dim_k" << std::setw(10) << "expected"
          << "verdict\n";
      for (const auto& r : rows) {
        out << std::left << std::setw(6) << r.k << std::setw(10) << (r.computed ? r.computed->str() : "?")
            << std::setw(10) << (r.expected ? r.expected->str() : "-") << r.verdict << '\n';
      }
      std::string line;
      for (std::size_t i = 0; i < seq.entries.size(); ++i) line += (i ? "," : "") + seq.entries[i].str();
      if (reached_tail) line += seq.entries.empty() ? "inf" : ",inf";
      out << "sequence: " << line << '\n';
      out << "verdict: " << overall << '\n';
      if (bounded) out << "note: at least one level hit the time budget; values are upper bounds\n";
      break;
    }
  }
  if (bounded) return kExitBounded;
  return mismatch ? kExitMismatch : kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct SizeRange {
  std::size_t lo, hi;
};

std::size_t draw_size(InstanceGenerator& gen, const RunConfig& config, SizeRange range) {
  return config.n ? *config.n : gen.size_between(range.lo, range.hi);
}

std::size_t random_count(const RunConfig& config, bool have_sources, std::size_t fallback) {
  if (config.random) return *config.random;
  return have_sources ? 0 : fallback;
}

std::vector<FiniteMetricSpace> spaces_for(const RunConfig& config, const std::vector<Source>& sources,
                                          std::size_t fallback, SizeRange range, bool graphs_only) {
  std::vector<FiniteMetricSpace> out;
  for (const auto& s : sources) out.push_back(s.space);
  InstanceGenerator gen(config.seed);
  const std::size_t count = random_count(config, !sources.empty(), fallback);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = draw_size(gen, config, range);
    out.push_back(graphs_only ? shortest_path_metric(gen.connected_graph(n)) : gen.mixed(n));
  }
  return out;
}

std::vector<JoinInstance> joins_for(const RunConfig& config, const std::vector<Source>& sources, std::size_t fallback,
                                    bool above_diameters) {
  std::vector<JoinInstance> out;
  if (!sources.empty()) {
    if (sources.size() != 2) throw Error(ErrorKind::Parse, "join suites take exactly two sources");
    FiniteMetricSpace left = sources[0].space, right = sources[1].space;
    if (config.relabel) {
      left = prefix_labels(left, "L.");
      right = prefix_labels(right, "R.");
    }
    Rational t;
    if (config.t) t = parse_positive(*config.t, "--t");
    else if (above_diameters) t = std::max(left.diameter(), right.diameter()) + Rational(1, 2);
    else throw Error(ErrorKind::Parse, "--t is required when joining given sources");
    out.push_back({std::move(left), std::move(right), t});
  }
  InstanceGenerator gen(config.seed);
  const std::size_t max_part = config.n.value_or(5);
  if (max_part < 2) throw Error(ErrorKind::BadFamilyParams, "--n must be at least 2 for joins");
  auto random = random_joins(gen, random_count(config, !sources.empty(), fallback), max_part, above_diameters);
  out.insert(out.end(), std::make_move_iterator(random.begin()), std::make_move_iterator(random.end()));
  return out;
}

std::vector<std::pair<Rational, Rational>> st_pairs_for(const RunConfig& config) {
  if (!config.s && !config.t) return default_truncation_pairs();
  if (!config.s || !config.t) throw Error(ErrorKind::Parse, "--s and --t must be given together");
  Rational s = parse_positive(*config.s, "--s"), t = parse_positive(*config.t, "--t");
  if (!(s < t)) throw Error(ErrorKind::Parse, "--s must be smaller than --t");
  return {{s, t}};
}

PropertyResult named(std::string name) {
  PropertyResult p;
  p.name = std::move(name);
  return p;
}

struct DivergenceRun {
  SuiteReport suite;
  std::vector<DivergenceReport> reports;
};

DivergenceRun run_divergence(const RunConfig& config, const std::vector<Source>& sources) {
  std::vector<FamilySpec> specs;
  for (const auto& s : sources) {
    if (!s.family) throw Error(ErrorKind::Parse, "divergence needs --family free-ball, grid-ball or ladder");
    specs.push_back(*s.family);
  }
  if (specs.empty()) {
    specs = {parse_family("free-ball:2,3"), parse_family("grid-ball:2,4"), parse_family("ladder:6")};
  }
  DivergenceRun run;
  run.suite.suite = "divergence";
  PropertyResult nondecreasing = named("dim1_nondecreasing"), strict = named("free_ball_dim1_strictly_increasing"),
                 witness = named("witness_in_bisector"), nested = named("witness_chain_nested"),
                 ladder3 = named("ladder_dim1_at_most_3"), ladder_basis = named("ladder_basis_0_1_i");
  for (const auto& spec : specs) {
    long long rank = 1, radius = 0;
    if (spec.family == Family::Ladder) {
      radius = spec.params.at(0);
    } else if (spec.family == Family::FreeBall || spec.family == Family::GridBall) {
      rank = spec.params.at(0);
      radius = spec.params.at(1);
    } else {
      throw Error(ErrorKind::BadFamilyParams, "divergence evidence covers free-ball, grid-ball and ladder only");
    }
    std::vector<long long> radii = config.radii;
    if (radii.empty()) {
      for (long long r = spec.family == Family::FreeBall ? 1 : 2; r <= radius; ++r) radii.push_back(r);
    }
    DivergenceReport rep = divergence_evidence(spec.family, rank, radii, solve_options(config));
    bool bounded = false;
    for (const auto& st : rep.steps) bounded = bounded || st.dim1.status == SolveStatus::Bounded;
    auto ser = [&] { return json({{"family", spec.str()}, {"radii", radii}}).dump(); };
    const std::string tag = bounded ? "budget exhausted" : "";
    nondecreasing.record(!bounded && rep.dim1_nondecreasing, rep.steps.back().points, ser, tag);
    witness.record(rep.witnesses_hold, rep.steps.back().points, ser, "witness escapes its bisector");
    nested.record(rep.chain_nested, rep.steps.back().points, ser, "witness chain not nested");
    if (spec.family == Family::FreeBall) {
      strict.record(!bounded && rep.dim1_strictly_increasing, rep.steps.back().points, ser, tag);
    }
    if (spec.family == Family::Ladder) {
      for (const auto& st : rep.steps) {
        auto one = [&] { return json({{"family", "ladder:" + std::to_string(st.radius)}}).dump(); };
        ladder3.record(st.dim1.status == SolveStatus::Optimal && st.dim1.optimum <= ExtendedNat(3), st.points, one,
                       "dim_1 = " + st.dim1.optimum.str());
        ladder_basis.record(st.basis_check.value_or(false), st.points, one, "{0, 1, i} is not a 1-generator");
      }
    }
    run.reports.push_back(std::move(rep));
  }
  for (auto* p : {&nondecreasing, &strict, &witness, &nested, &ladder3, &ladder_basis}) {
    if (p->checked > 0) run.suite.properties.push_back(*p);
  }
  return run;
}

json divergence_json(const DivergenceReport& rep) {
  json steps = json::array();
  for (const auto& st : rep.steps) {
    json s = {{"radius", st.radius},
              {"points", st.points},
              {"dim1", ext_json(st.dim1.optimum)},
              {"status", to_string(st.dim1.status)},
              {"pair", {st.pair_u, st.pair_v}},
              {"bisector_size", st.bisector_size},
              {"witness_size", st.witness.size()},
              {"witness_in_bisector", st.witness_in_bisector},
              {"nested_in_next", st.nested_in_next},
              {"fraction", st.fraction}};
    if (rep.family.family == Family::GridBall) s["metric_mismatches"] = st.metric_mismatches;
    if (st.basis_check) s["basis_0_1_i"] = *st.basis_check;
    steps.push_back(s);
  }
  return {{"family", rep.family.str()},
          {"steps", steps},
          {"dim1_nondecreasing", rep.dim1_nondecreasing},
          {"dim1_strictly_increasing", rep.dim1_strictly_increasing},
          {"chain_nested", rep.chain_nested},
          {"witnesses_hold", rep.witnesses_hold}};
}

const std::vector<std::string> kSuites = {"monotonicity", "truncation", "nesting",     "join",      "join-equality",
                                          "bipartite",    "oracle",     "permutation", "divergence"};

int verify_impl(const RunConfig& config, std::ostream& out) {
  const auto sources = load_sources(config);
  const SolveOptions opts = solve_options(config);
  std::vector<std::string> suites;
  if (config.suite == "all") {
    suites = kSuites;
    suites.pop_back();  // divergence is opt-in; it solves large balls
  } else if (std::find(kSuites.begin(), kSuites.end(), config.suite) != kSuites.end()) {
    suites = {config.suite};
  } else {
    throw Error(ErrorKind::Parse, "unknown suite '" + config.suite + "'");
  }

  std::vector<SuiteReport> reports;
  std::vector<DivergenceReport> divergence;
  for (const auto& name : suites) {
    if (name == "monotonicity") {
      reports.push_back(verify_monotonicity(spaces_for(config, sources, 100, {3, 9}, false), opts));
    } else if (name == "truncation") {
      auto pairs = st_pairs_for(config);
      reports.push_back(verify_truncation(spaces_for(config, sources, 50, {3, 8}, false), pairs, opts));
    } else if (name == "nesting") {
      auto pairs = st_pairs_for(config);
      reports.push_back(verify_nesting(spaces_for(config, sources, 50, {3, 10}, false), pairs));
    } else if (name == "join") {
      reports.push_back(verify_join(joins_for(config, sources, 50, false), opts));
    } else if (name == "join-equality") {
      reports.push_back(verify_join_equality(joins_for(config, sources, 20, true), opts));
    } else if (name == "bipartite") {
      std::vector<Graph> graphs;
      for (const auto& s : sources) {
        if (!s.graph) throw Error(ErrorKind::Parse, s.name + " is not a graph");
        graphs.push_back(*s.graph);
      }
      if (sources.empty()) {
        for (const char* f : {"cycle:8", "grid-ball:2,3"}) graphs.push_back(*from_family(f).graph);
      }
      InstanceGenerator gen(config.seed);
      const std::size_t count = random_count(config, !sources.empty(), 20);
      for (std::size_t i = 0; i < count; ++i) graphs.push_back(gen.connected_bipartite_graph(draw_size(gen, config, {4, 12})));
      reports.push_back(verify_bipartite(graphs));
    } else if (name == "oracle") {
      auto spaces = spaces_for(config, sources, 200, {3, 12}, true);
      for (const auto& s : spaces) {
        if (s.size() > kDefaultBruteForceCap) throw Error(ErrorKind::InstanceTooLarge, "oracle suite is capped at 16 points");
      }
      reports.push_back(verify_oracle(spaces, opts));
    } else if (name == "permutation") {
      reports.push_back(verify_permutation(spaces_for(config, sources, 50, {3, 9}, false), config.seed, opts));
    } else if (name == "divergence") {
      auto run = run_divergence(config, sources);
      reports.push_back(std::move(run.suite));
      divergence = std::move(run.reports);
    }
  }

  const bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.ok(); });
  if (config.format == Format::Json) {
    json doc = header("verify");
    doc["seed"] = config.seed;
    json arr = json::array();
    for (const auto& r : reports) {
      json props = json::array();
      for (const auto& p : r.properties) {
        json pj = {{"name", p.name}, {"checked", p.checked}, {"passed", p.passed}, {"ok", p.ok()}};
        if (p.counterexample) {
          pj["counterexample"] = json::parse(*p.counterexample);
          pj["counterexample_points"] = p.counterexample_points;
          pj["note"] = p.failure_note;
        }
        props.push_back(pj);
      }
      arr.push_back({{"suite", r.suite}, {"ok", r.ok()}, {"properties", props}});
    }
    doc["suites"] = arr;
    if (!divergence.empty()) {
      json d = json::array();
      for (const auto& rep : divergence) d.push_back(divergence_json(rep));
      doc["divergence"] = d;
    }
    doc["ok"] = ok;
    emit(out, doc);
  } else {
    const char sep = config.format == Format::Csv ? ',' : ' ';
    if (config.format == Format::Csv) out << "suite,property,passed,checked,verdict\n";
    for (const auto& r : reports) {
      for (const auto& p : r.properties) {
        if (config.format == Format::Csv) {
          out << r.suite << sep << p.name << sep << p.passed << sep << p.checked << sep << (p.ok() ? "PASS" : "FAIL")
              << '\n';
          continue;
        }
        out << r.suite << '/' << p.name << ": " << p.passed << '/' << p.checked << ' ' << (p.ok() ? "PASS" : "FAIL")
            << '\n';
        if (p.counterexample) {
          out << "  smallest counterexample (" << p.counterexample_points << " points): " << *p.counterexample << '\n';
          if (!p.failure_note.empty()) out << "  note: " << p.failure_note << '\n';
        }
      }
    }
    if (config.format == Format::Plain) {
      for (const auto& rep : divergence) {
        out << rep.family.str() << ":\n";
        for (const auto& st : rep.steps) {
          out << "  r=" << st.radius << " points=" << st.points << " dim_1=" << st.dim1.optimum.str()
              << " witness=" << st.witness.size() << "/" << st.bisector_size << " in B(" << st.pair_u << '|'
              << st.pair_v << ")\n";
        }
      }
      out << (ok ? "all properties hold\n" : "property violation\n");
    }
  }
  return ok ? kExitOk : kExitViolation;
}

// ---- join ------------------------------------------------------------------

int join_impl(const RunConfig& config, std::ostream& out) {
  auto sources = load_sources(config);
  if (sources.size() != 2) {
    throw Error(ErrorKind::Parse, "join takes exactly two sources, got " + std::to_string(sources.size()));
  }
  if (!config.t) throw Error(ErrorKind::Parse, "join requires --t");
  const Rational t = parse_positive(*config.t, "--t");
  FiniteMetricSpace left = sources[0].space, right = sources[1].space;
  if (config.relabel) {
    left = prefix_labels(left, "L.");
    right = prefix_labels(right, "R.");
  }
  const FiniteMetricSpace joined = join(left, right, t);
  const FiniteMetricSpace left_t = truncate(left, t), right_t = truncate(right, t);

  std::vector<std::size_t> ks;
  if (config.k) ks = {*config.k};
  else for (std::size_t k = 1; k <= config.k_max.value_or(1); ++k) ks.push_back(k);
  if (std::find(ks.begin(), ks.end(), 0) != ks.end()) throw Error(ErrorKind::NonpositiveParameter, "k must be at least 1");

  const SolveOptions opts = solve_options(config);
  struct Row {
    std::size_t k;
    ExtendedNat l, r, lt, rt, j;
    bool chain;
  };
  std::vector<Row> rows;
  bool bounded = false;
  for (std::size_t k : ks) {
    SolveReport reps[] = {dim_exact(left, k, opts), dim_exact(right, k, opts), dim_exact(left_t, k, opts),
                          dim_exact(right_t, k, opts), dim_exact(joined, k, opts)};
    for (const auto& r : reps) bounded = bounded || r.status == SolveStatus::Bounded;
    Row row{k, reps[0].optimum, reps[1].optimum, reps[2].optimum, reps[3].optimum, reps[4].optimum, false};
    row.chain = row.l + row.r <= row.lt + row.rt && row.lt + row.rt <= row.j;
    rows.push_back(row);
  }
  auto relation = [](const Row& r) {
    ExtendedNat sum = r.l + r.r;
    return sum < r.j ? "<" : (sum == r.j ? "=" : ">");
  };

  switch (config.format) {
    case Format::Json: {
      json doc = header("join");
      doc["left"] = sources[0].name;
      doc["right"] = sources[1].name;
      doc["t"] = format_rational(t);
      doc["space"] = json::parse(space_to_json(joined));
      json cmp = json::array();
      for (const auto& r : rows) {
        cmp.push_back({{"k", r.k},
                       {"left", ext_json(r.l)},
                       {"right", ext_json(r.r)},
                       {"left_t", ext_json(r.lt)},
                       {"right_t", ext_json(r.rt)},
                       {"join", ext_json(r.j)},
                       {"sum", ext_json(r.l + r.r)},
                       {"sum_t", ext_json(r.lt + r.rt)},
                       {"relation", relation(r)},
                       {"chain_holds", r.chain}});
      }
      doc["comparison"] = cmp;
      emit(out, doc);
      break;
    }
    case Format::Csv:
      out << "k,left,right,left_t,right_t,join\n";
      for (const auto& r : rows) {
        out << r.k << ',' << r.l.str() << ',' << r.r.str() << ',' << r.lt.str() << ',' << r.rt.str() << ','
            << r.j.str() << '\n';
      }
      break;
    case Format::Plain:
      out << "join of " << sources[0].name << " and " << sources[1].name << " at t = " << format_rational(t) << " ("
          << joined.size() << " points)\n";
      for (const auto& r : rows) {
        out << "k=" << r.k << ": dim(X1)+dim(X2) = " << r.l.str() << "+" << r.r.str() << " = " << (r.l + r.r).str()
            << ", truncated " << (r.lt + r.rt).str() << ", join " << r.j.str() << "  (sum " << relation(r)
            << " join)" << (r.chain ? "" : "  CHAIN VIOLATED") << '\n';
      }
      break;
  }
  if (bounded) return kExitBounded;
  const bool chain = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.chain; });
  return chain ? kExitOk : kExitViolation;
}

}  // namespace

double resolve_budget(std::optional<double> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("KMETRIC_BUDGET_SECS"); env && *env) {
    char* end = nullptr;
    double value = std::strtod(env, &end);
    if (end && *end == '\0' && value > 0) return value;
    throw Error(ErrorKind::Parse, std::string("KMETRIC_BUDGET_SECS is not a positive number: ") + env);
  }
  return 60.0;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream&) { return analyze_impl(config, out); }
int cmd_sequence(const RunConfig& config, std::ostream& out, std::ostream&) { return sequence_impl(config, out); }
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) { return verify_impl(config, out); }
int cmd_join(const RunConfig& config, std::ostream& out, std::ostream&) { return join_impl(config, out); }

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Analyze:
        return cmd_analyze(config, out, err);
      case Command::Sequence:
        return cmd_sequence(config, out, err);
      case Command::Verify:
        return cmd_verify(config, out, err);
      case Command::Join:
        return cmd_join(config, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-metric dimension toolkit"};
  app.require_subcommand(1);
  RunConfig config;
  std::optional<double> budget;
  std::string format = "plain";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", config.families, "Family specifier, e.g. cycle:8 (repeatable)");
    sub->add_option("--input", config.inputs, "Metric-space JSON or edge-list file (repeatable)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    sub->add_option("--budget-secs", budget, "Time budget per solve in seconds")->check(CLI::PositiveNumber);
    sub->add_flag("--parallel", config.parallel, "Parallel branch and bound");
    sub->add_option("--threads", config.threads, "Worker threads for --parallel (0 = hardware)");
    sub->add_flag("--timings", config.timings, "Include wall time in the output");
  };

  auto* analyze = app.add_subcommand("analyze", "max_k and dim_k with a certified basis");
  add_common(analyze);
  analyze->add_option("--k", config.k, "k (default 1)");
  analyze->add_flag("--bisectors", config.bisectors, "List every bisector");

  auto* sequence = app.add_subcommand("sequence", "Dimension sequence with expected-value verdicts");
  add_common(sequence);
  sequence->add_option("--k-max", config.k_max, "Last k to solve (default max_k)");

  auto* verify = app.add_subcommand("verify", "Property suites on family and random instances");
  add_common(verify);
  verify->add_option("--suite", config.suite, "Suite name or 'all'");
  verify->add_option("--random", config.random, "Number of random instances");
  verify->add_option("--n", config.n, "Size of random instances (max part size for joins)");
  verify->add_option("--seed", config.seed, "Seed for random instances");
  verify->add_option("--t", config.t, "t for truncation or join");
  verify->add_option("--s", config.s, "s < t for truncation");
  verify->add_option("--radii", config.radii, "Radii for divergence evidence")->delimiter(',');
  verify->add_flag("--relabel", config.relabel, "Prefix labels L./R. when joining given sources");

  auto* joincmd = app.add_subcommand("join", "Join two spaces at parameter t");
  add_common(joincmd);
  joincmd->add_option("--t", config.t, "Join parameter t > 0")->required();
  joincmd->add_option("--k", config.k, "Single k to compare");
  joincmd->add_option("--k-max", config.k_max, "Compare k = 1 .. k_max");
  joincmd->add_flag("--relabel", config.relabel, "Prefix labels L./R. to avoid collisions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (analyze->parsed()) config.command = Command::Analyze;
  else if (sequence->parsed()) config.command = Command::Sequence;
  else if (verify->parsed()) config.command = Command::Verify;
  else config.command = Command::Join;
  config.format = format == "json" ? Format::Json : (format == "csv" ? Format::Csv : Format::Plain);
  try {
    config.budget_secs = resolve_budget(budget);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return run(config, out, err);
}

}  // namespace kmetric::cli
