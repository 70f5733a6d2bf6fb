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

#include "kmetric/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "kmetric/error.hpp"

namespace kmetric {
namespace {

// Generated objects are capped so a typo cannot ask for billions of points.
constexpr long long kMaxFamilyPoints = 5000;

struct FamilyName {
  Family family;
  std::string_view canonical;
  std::string_view alias;
};

constexpr FamilyName kNames[] = {
    {Family::Path, "path", "path"},
    {Family::Cycle, "cycle", "cycle"},
    {Family::Complete, "complete", "complete"},
    {Family::Petersen, "petersen", "petersen"},
    {Family::Lollipop, "lollipop", "lollipop"},
    {Family::GridBall, "grid-ball", "grid_ball"},
    {Family::FreeBall, "free-ball", "free_ball"},
    {Family::Ladder, "ladder", "ladder"},
    {Family::SqrtPrimes, "sqrt-primes", "sqrt_primes"},
    {Family::IntervalSample, "interval", "interval_sample"},
};

std::string_view name_of(Family f) {
  for (const auto& n : kNames)
    if (n.family == f) return n.canonical;
  return "?";
}

[[noreturn]] void bad_params(const FamilySpec& spec, const std::string& why) {
  throw Error(ErrorKind::BadFamilyParams, spec.str() + ": " + why, {spec.str()});
}

void require_arity(const FamilySpec& spec, std::size_t arity) {
  if (spec.params.size() != arity) {
    bad_params(spec, "expected " + std::to_string(arity) + " parameter(s), got " + std::to_string(spec.params.size()));
  }
}

std::vector<std::string> numbered(std::string_view prefix, long long from, long long count) {
  std::vector<std::string> out;
  for (long long i = 0; i < count; ++i) out.push_back(std::string(prefix) + std::to_string(from + i));
  return out;
}

Graph make_path(long long n) {
  std::vector<Graph::Edge> edges;
  for (long long i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(numbered("v", 1, n), edges);
}

Graph make_cycle(long long n) {
  std::vector<Graph::Edge> edges;
  for (long long i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(numbered("v", 0, n), edges);
}

Graph make_complete(long long n) {
  std::vector<Graph::Edge> edges;
  for (long long i = 0; i < n; ++i)
    for (long long j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(numbered("v", 1, n), edges);
}

Graph make_petersen() {
  // u1..u5 (indices 0..4) outer 5-cycle, v1..v5 (5..9) inner pentagram
  // v1-v3-v5-v2-v4-v1, spokes ui-vi.
  std::vector<std::string> labels = numbered("u", 1, 5);
  auto inner = numbered("v", 1, 5);
  labels.insert(labels.end(), inner.begin(), inner.end());
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < 5; ++i) edges.emplace_back(i, (i + 1) % 5);
  for (std::size_t i = 0; i < 5; ++i) edges.emplace_back(i, 5 + i);
  const std::size_t star[] = {0, 2, 4, 1, 3};
  for (std::size_t i = 0; i < 5; ++i) edges.emplace_back(5 + star[i], 5 + star[(i + 1) % 5]);
  return Graph(std::move(labels), edges);
}

Graph make_lollipop(long long tail) {
  // v1..v4 then u1..ut: 4 + t vertices. Cycle v1-v2-v3-v4-u1-v1, path u1..ut.
  std::vector<std::string> labels = numbered("v", 1, 4);
  auto us = numbered("u", 1, tail);
  labels.insert(labels.end(), us.begin(), us.end());
  std::vector<Graph::Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  for (long long i = 0; i + 1 < tail; ++i) edges.emplace_back(4 + i, 5 + i);
  return Graph(std::move(labels), edges);
}

std::vector<std::vector<long long>> l1_ball(long long rank, long long radius) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> x(static_cast<std::size_t>(rank), -radius);
  while (true) {
    long long norm = 0;
    for (auto c : x) norm += std::llabs(c);
    if (norm <= radius) out.push_back(x);
    std::size_t i = x.size();
    while (i > 0 && x[i - 1] == radius) x[--i] = -radius;
    if (i == 0) break;
    ++x[i - 1];
  }
  return out;
}

std::string point_label(const std::vector<long long>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

Graph make_grid_ball(long long rank, long long radius) {
  auto points = l1_ball(rank, radius);
  std::map<std::vector<long long>, std::size_t> index;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < points.size(); ++i) {
    index[points[i]] = i;
    labels.push_back(point_label(points[i]));
  }
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t axis = 0; axis < points[i].size(); ++axis) {
      auto y = points[i];
      ++y[axis];
      if (auto it = index.find(y); it != index.end()) edges.emplace_back(i, it->second);
    }
  }
  return Graph(std::move(labels), edges);
}

// Reduced words over a, b, ... with inverses A, B, ...; "e" is the identity.
// Edges join w and w·g, so a word's path from e runs through its prefixes.
Graph make_free_ball(long long rank, long long radius) {
  std::vector<char> letters;
  for (long long i = 0; i < rank; ++i) {
    letters.push_back(static_cast<char>('a' + i));
    letters.push_back(static_cast<char>('A' + i));
  }
  auto inverse = [](char c) {
    return static_cast<char>(c >= 'a' ? c - 'a' + 'A' : c - 'A' + 'a');
  };
  std::vector<std::string> words{""};
  std::vector<Graph::Edge> edges;
  std::size_t level_begin = 0;
  for (long long len = 1; len <= radius; ++len) {
    std::size_t level_end = words.size();
    for (std::size_t w = level_begin; w < level_end; ++w) {
      for (char c : letters) {
        if (!words[w].empty() && words[w].back() == inverse(c)) continue;
        edges.emplace_back(w, words.size());
        words.push_back(words[w] + c);
      }
    }
    level_begin = level_end;
  }
  words[0] = "e";
  return Graph(std::move(words), edges);
}

std::string ladder_label(long long m, int row) {
  if (row == 0) return std::to_string(m);
  if (m == 0) return "i";
  return std::to_string(m) + "+i";
}

Graph make_ladder(long long radius) {
  const long long width = 2 * radius + 1;
  std::vector<std::string> labels;
  for (int row = 0; row < 2; ++row)
    for (long long m = -radius; m <= radius; ++m) labels.push_back(ladder_label(m, row));
  std::vector<Graph::Edge> edges;
  for (int row = 0; row < 2; ++row)
    for (long long j = 0; j + 1 < width; ++j) edges.emplace_back(row * width + j, row * width + j + 1);
  for (long long j = 0; j < width; ++j) edges.emplace_back(j, width + j);
  return Graph(std::move(labels), edges);
}

std::vector<long long> first_primes(long long count) {
  std::vector<long long> primes;
  for (long long c = 2; static_cast<long long>(primes.size()) < count; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

FiniteMetricSpace make_sqrt_primes(long long m) {
  std::vector<std::string> labels;
  std::vector<Rational> coords;
  for (auto p : first_primes(m)) {
    labels.push_back("sqrt(" + std::to_string(p) + ")");
    coords.push_back(quantize(std::sqrt(static_cast<double>(p)), kDefaultQuantizationDigits));
  }
  return from_line_points(std::move(labels), coords,
                          {{"source", "sqrt-primes"}, {"quantization_digits", std::to_string(kDefaultQuantizationDigits)}});
}

FiniteMetricSpace make_interval(long long m) {
  std::vector<std::string> labels;
  std::vector<Rational> coords;
  for (long long i = 0; i < m; ++i) {
    Rational x(i, m - 1);
    labels.push_back(format_rational(x));
    coords.push_back(x);
  }
  return from_line_points(std::move(labels), coords, {{"source", "interval"}});
}

long long free_ball_size(long long rank, long long radius) {
  long long total = 1;
  long long level = 2 * rank;
  for (long long r = 1; r <= radius && total <= kMaxFamilyPoints; ++r) {
    total += level;
    level *= 2 * rank - 1;
  }
  return total;
}

long long grid_ball_size(long long rank, long long radius) {
  // Count of the (2r+1)^p box is an upper bound; enumerate only when small.
  long double box = std::pow(static_cast<long double>(2 * radius + 1), static_cast<long double>(rank));
  if (box > 4 * kMaxFamilyPoints) return kMaxFamilyPoints + 1;
  return static_cast<long long>(l1_ball(rank, radius).size());
}

ExtendedNat nat(long long v) { return ExtendedNat(static_cast<std::uint64_t>(v)); }

}  // namespace

std::string FamilySpec::str() const {
  std::string s(name_of(family));
  for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : ":") + std::to_string(params[i]);
  return s;
}

FamilySpec parse_family(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  FamilySpec spec;
  bool found = false;
  for (const auto& n : kNames) {
    if (name == n.canonical || name == n.alias) {
      spec.family = n.family;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorKind::BadFamilyParams, "unknown family '" + std::string(name) + "'", {std::string(text)});
  }
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      auto comma = rest.find(',');
      std::string token(rest.substr(0, comma));
      char* end = nullptr;
      long long v = std::strtoll(token.c_str(), &end, 10);
      if (token.empty() || end != token.c_str() + token.size()) {
        throw Error(ErrorKind::BadFamilyParams, "bad parameter '" + token + "' in '" + std::string(text) + "'",
                    {std::string(text)});
      }
      spec.params.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }
  validate(spec);
  return spec;
}

void validate(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto at_least = [&](std::size_t i, long long lo, const char* what) {
    if (p[i] < lo) bad_params(spec, std::string(what) + " must be at least " + std::to_string(lo));
  };
  auto cap = [&](long long points) {
    if (points > kMaxFamilyPoints) bad_params(spec, "more than " + std::to_string(kMaxFamilyPoints) + " points");
  };
  switch (spec.family) {
    case Family::Path:
      require_arity(spec, 1);
      at_least(0, 2, "n");
      cap(p[0]);
      break;
    case Family::Cycle:
      require_arity(spec, 1);
      at_least(0, 3, "n");
      cap(p[0]);
      break;
    case Family::Complete:
      require_arity(spec, 1);
      at_least(0, 2, "n");
      cap(p[0]);
      break;
    case Family::Petersen:
      require_arity(spec, 0);
      break;
    case Family::Lollipop:
      require_arity(spec, 2);
      if (p[0] != 5) bad_params(spec, "only the 5-cycle lollipop is supported");
      at_least(1, 1, "tail length t");
      cap(4 + p[1]);
      break;
    case Family::GridBall:
      require_arity(spec, 2);
      at_least(0, 1, "rank p");
      at_least(1, 1, "radius r");
      cap(grid_ball_size(p[0], p[1]));
      break;
    case Family::FreeBall:
      require_arity(spec, 2);
      at_least(0, 1, "rank p");
      at_least(1, 1, "radius r");
      if (p[0] > 13) bad_params(spec, "rank above 13 not supported");
      cap(free_ball_size(p[0], p[1]));
      break;
    case Family::Ladder:
      require_arity(spec, 1);
      at_least(0, 1, "radius r");
      cap(2 * (2 * p[0] + 1));
      break;
    case Family::SqrtPrimes:
      require_arity(spec, 1);
      at_least(0, 2, "m");
      cap(p[0]);
      break;
    case Family::IntervalSample:
      require_arity(spec, 1);
      at_least(0, 2, "m");
      cap(p[0]);
      break;
  }
}

std::variant<Graph, FiniteMetricSpace> make(const FamilySpec& spec) {
  validate(spec);
  const auto& p = spec.params;
  switch (spec.family) {
    case Family::Path: return make_path(p[0]);
    case Family::Cycle: return make_cycle(p[0]);
    case Family::Complete: return make_complete(p[0]);
    case Family::Petersen: return make_petersen();
    case Family::Lollipop: return make_lollipop(p[1]);
    case Family::GridBall: return make_grid_ball(p[0], p[1]);
    case Family::FreeBall: return make_free_ball(p[0], p[1]);
    case Family::Ladder: return make_ladder(p[0]);
    case Family::SqrtPrimes: return make_sqrt_primes(p[0]);
    case Family::IntervalSample: return make_interval(p[0]);
  }
  bad_params(spec, "unhandled family");
}

FiniteMetricSpace make_space(const FamilySpec& spec) {
  auto made = make(spec);
  if (auto* g = std::get_if<Graph>(&made)) {
    FiniteMetricSpace space = shortest_path_metric(*g);
    Metadata meta = space.meta();
    meta["family"] = spec.str();
    return build_space(space.labels(), space.matrix(), std::move(meta));
  }
  return std::get<FiniteMetricSpace>(std::move(made));
}

std::optional<ExpectedSequence> expected_sequence(const FamilySpec& spec) {
  validate(spec);
  const auto& p = spec.params;
  ExpectedSequence e;
  switch (spec.family) {
    case Family::Complete:
      e.entries = {nat(p[0] - 1), nat(p[0])};
      e.tail_start = 3;
      return e;
    case Family::Path: {
      const long long n = p[0];
      e.entries = {nat(1), nat(2)};
      if (n >= 4) {
        for (long long k = 3; k <= n - 1; ++k) e.entries.push_back(nat(k + 1));
      }
      e.tail_start = e.entries.size() + 1;
      return e;
    }
    case Family::Cycle: {
      const long long n = p[0];
      if (n % 2 == 1) {
        for (long long k = 1; k <= n - 1; ++k) e.entries.push_back(nat(k + 1));
      } else {
        const long long q = n / 2;
        for (long long k = 1; k <= q - 1; ++k) e.entries.push_back(nat(k + 1));
        for (long long k = q; k <= 2 * q - 2; ++k) e.entries.push_back(nat(k + 2));
      }
      e.tail_start = e.entries.size() + 1;
      return e;
    }
    case Family::Petersen:
      for (long long v : {3, 4, 7, 8, 9, 10}) e.entries.push_back(nat(v));
      e.tail_start = 7;
      return e;
    case Family::Lollipop:
      for (long long k = 1; k <= 4; ++k) e.entries.push_back(nat(k + 1));
      return e;
    case Family::SqrtPrimes:
      for (long long k = 1; k <= p[0]; ++k) e.entries.push_back(nat(k));
      e.tail_start = static_cast<std::size_t>(p[0]) + 1;
      return e;
    default:
      return std::nullopt;
  }
}

std::size_t grid_ball_distance_mismatches(long long rank, long long radius) {
  FamilySpec spec{Family::GridBall, {rank, radius}};
  validate(spec);
  auto points = l1_ball(rank, radius);
  FiniteMetricSpace space = shortest_path_metric(make_grid_ball(rank, radius));
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      long long l1 = 0;
      for (std::size_t a = 0; a < points[i].size(); ++a) l1 += std::llabs(points[i][a] - points[j][a]);
      if (space.distance(i, j) != Rational(l1)) ++mismatches;
    }
  }
  return mismatches;
}

DivergenceReport divergence_evidence(Family family, long long rank, const std::vector<long long>& radii,
                                     const SolveOptions& options) {
  if (radii.size() < 2) throw Error(ErrorKind::BadFamilyParams, "divergence evidence needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) throw Error(ErrorKind::BadFamilyParams, "radii must be strictly increasing");
  }
  if ((family == Family::GridBall || family == Family::FreeBall) && rank < 2) {
    throw Error(ErrorKind::BadFamilyParams, "divergence evidence needs rank at least 2");
  }
  if (family != Family::GridBall && family != Family::FreeBall && family != Family::Ladder) {
    throw Error(ErrorKind::BadFamilyParams, "divergence evidence supports grid-ball, free-ball and ladder");
  }

  DivergenceReport report;
  for (long long r : radii) {
    FamilySpec spec = family == Family::Ladder ? FamilySpec{family, {r}} : FamilySpec{family, {rank, r}};
    validate(spec);
    report.family = spec;
    FiniteMetricSpace space = make_space(spec);

    DivergenceStep step;
    step.radius = r;
    step.points = space.size();
    step.dim1 = dim_exact(space, 1, options);

    std::vector<std::string> witness;
    if (family == Family::FreeBall) {
      // Sibling leaves below the end of the ray a^(r-1): every other point
      // of the ball is equidistant from them.
      std::string stem(static_cast<std::size_t>(r - 1), 'a');
      step.pair_u = stem + "a";
      step.pair_v = stem + "b";
      for (const auto& l : space.labels())
        if (l != step.pair_u && l != step.pair_v) witness.push_back(l);
    } else if (family == Family::GridBall) {
      // zeta = (m,...,m) pushed as far out as the ball allows; the orthant
      // x_i >= m+1 is equidistant from zeta+e1 and zeta+e2.
      const long long m = -((r + 1) / rank);
      std::vector<long long> a(static_cast<std::size_t>(rank), m), b(static_cast<std::size_t>(rank), m);
      a[0] += 1;
      b[1] += 1;
      step.pair_u = point_label(a);
      step.pair_v = point_label(b);
      for (const auto& x : l1_ball(rank, r)) {
        if (std::all_of(x.begin(), x.end(), [&](long long c) { return c >= m + 1; })) {
          witness.push_back(point_label(x));
        }
      }
      step.metric_mismatches = grid_ball_distance_mismatches(rank, r);
    } else {
      step.pair_u = "0";
      step.pair_v = "1+i";
      for (long long m = 1; m <= r; ++m) witness.push_back(ladder_label(m, 0));
      for (long long m = 0; m >= -r; --m) witness.push_back(ladder_label(m, 1));
      PointSet basis{*space.index_of("0"), *space.index_of("1"), *space.index_of("i")};
      step.basis_check = is_k_generator(space, basis, 1).valid;
    }

    const auto u = space.index_of(step.pair_u);
    const auto v = space.index_of(step.pair_v);
    if (!u || !v) throw Error(ErrorKind::BadFamilyParams, "witness pair missing from " + spec.str());
    PointSet bis = bisector(space, *u, *v);
    step.bisector_size = bis.size();
    step.witness_in_bisector = std::all_of(witness.begin(), witness.end(), [&](const std::string& l) {
      auto idx = space.index_of(l);
      return idx && bis.contains(*idx);
    });
    step.fraction = static_cast<double>(witness.size()) / static_cast<double>(space.size());
    step.witness = std::move(witness);
    report.steps.push_back(std::move(step));
  }

  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    auto& s = report.steps[i];
    report.witnesses_hold = report.witnesses_hold && s.witness_in_bisector;
    if (s.basis_check) report.witnesses_hold = report.witnesses_hold && *s.basis_check;
    if (i + 1 < report.steps.size()) {
      const auto& next = report.steps[i + 1].witness;
      std::set<std::string> next_set(next.begin(), next.end());
      s.nested_in_next = std::all_of(s.witness.begin(), s.witness.end(),
                                     [&](const std::string& l) { return next_set.count(l) > 0; });
      report.chain_nested = report.chain_nested && s.nested_in_next;
      const auto& a = s.dim1.optimum;
      const auto& b = report.steps[i + 1].dim1.optimum;
      report.dim1_nondecreasing = report.dim1_nondecreasing && a <= b;
      report.dim1_strictly_increasing = report.dim1_strictly_increasing && a < b;
    }
  }
  return report;
}

}  // namespace kmetric
