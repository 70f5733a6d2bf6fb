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

#include "kmetric/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "json.hpp"
#include "kmetric/io.hpp"

namespace kmetric {
namespace {

using nlohmann::json;

std::string space_json(const FiniteMetricSpace& s) { return space_to_json(s, -1); }

std::string join_json(const JoinInstance& j) {
  json doc;
  doc["left"] = json::parse(space_to_json(j.left, -1));
  doc["right"] = json::parse(space_to_json(j.right, -1));
  doc["t"] = format_rational(j.t);
  return doc.dump();
}

std::string graph_json(const Graph& g) {
  json doc;
  doc["labels"] = g.labels();
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({g.labels()[a], g.labels()[b]});
  doc["edges"] = edges;
  return doc.dump();
}

std::vector<ExtendedNat> optima(const std::vector<SolveReport>& reports) {
  std::vector<ExtendedNat> out;
  for (const auto& r : reports) out.push_back(r.optimum);
  return out;
}

bool any_bounded(const std::vector<SolveReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const SolveReport& r) { return r.status == SolveStatus::Bounded; });
}

std::string show(const std::vector<ExtendedNat>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
  return s;
}

bool subset(const PointSet& a, const PointSet& b) { return a.is_subset_of(b); }

PropertyResult property(std::string name) {
  PropertyResult p;
  p.name = std::move(name);
  return p;
}

}  // namespace

void PropertyResult::record(bool pass, std::size_t points, const std::function<std::string()>& serialize,
                            const std::string& note) {
  ++checked;
  if (pass) {
    ++passed;
    return;
  }
  if (!counterexample || points < counterexample_points) {
    counterexample = serialize();
    counterexample_points = points;
    failure_note = note;
  }
}

bool SuiteReport::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

std::vector<SolveReport> independent_dims(const FiniteMetricSpace& space, std::size_t k_last,
                                          const SolveOptions& options) {
  const DistinguisherMap map = all_distinguishers(space);
  SolveOptions plain = options;
  plain.lower_bound_hint.reset();
  std::vector<SolveReport> out;
  for (std::size_t k = 1; k <= k_last; ++k) out.push_back(dim_exact(map, k, plain));
  return out;
}

SuiteReport verify_monotonicity(std::span<const FiniteMetricSpace> spaces, const SolveOptions& options) {
  SuiteReport suite{"monotonicity", {}};
  PropertyResult strict = property("strict_increase"), offset = property("offset_bound"), sandwich = property("bounds_sandwich"),
      greedy = property("greedy_upper_bound"), certified = property("basis_certified");
  for (const auto& space : spaces) {
    const DistinguisherMap map = all_distinguishers(space);
    const std::size_t top = max_k(map);
    const std::size_t n = space.size();
    auto reports = independent_dims(space, top + 1, options);
    auto dims = optima(reports);
    auto ser = [&] { return space_json(space); };
    const bool bounded = any_bounded(reports);
    const std::string tag = bounded ? "budget exhausted; " : "";

    bool inc = !bounded;
    for (std::size_t k = 1; k < dims.size() && inc; ++k) {
      if (dims[k - 1].is_finite()) inc = dims[k] >= dims[k - 1] + ExtendedNat(1);
      else inc = !dims[k].is_finite();
    }
    strict.record(inc, n, ser, tag + "sequence " + show(dims));

    bool off = !bounded;
    for (std::size_t k = 1; k <= dims.size() && off; ++k) {
      off = dims[k - 1] + ExtendedNat(1) >= dims[0] + ExtendedNat(k);
    }
    offset.record(off, n, ser, tag + "sequence " + show(dims));

    bool sand = !bounded;
    for (std::size_t k = 1; k <= top && sand; ++k) {
      sand = dims[k - 1] >= ExtendedNat(k) && dims[k - 1] <= ExtendedNat(n);
    }
    sand = sand && !dims[top].is_finite();
    sandwich.record(sand, n, ser, tag + "sequence " + show(dims) + ", max_k " + std::to_string(top));

    bool gr = true;
    bool cert = true;
    for (const auto& r : reports) {
      if (!r.optimum.is_finite()) {
        cert = cert && !r.basis;
        continue;
      }
      gr = gr && r.greedy_value && *r.greedy_value >= r.optimum.value();
      if (!r.basis || r.basis->size() != r.optimum.value()) {
        cert = false;
        continue;
      }
      cert = cert && is_k_generator(map, *r.basis, r.k).valid;
    }
    greedy.record(gr, n, ser, "greedy below optimum");
    certified.record(cert, n, ser, "returned basis is not a k-generator of the reported size");
  }
  suite.properties = {strict, offset, sandwich, greedy, certified};
  return suite;
}

SuiteReport verify_nesting(std::span<const FiniteMetricSpace> spaces,
                           std::span<const std::pair<Rational, Rational>> st_pairs) {
  SuiteReport suite{"nesting", {}};
  PropertyResult cap2t = property("bisector_nesting_cap_2t"), capt = property("bisector_nesting_cap_t");
  for (const auto& space : spaces) {
    for (const auto& [s, t] : st_pairs) {
      auto check = [&](const FiniteMetricSpace& xt, const FiniteMetricSpace& xs) {
        for (PointIndex u = 0; u < space.size(); ++u) {
          for (PointIndex v = u + 1; v < space.size(); ++v) {
            PointSet b = bisector(space, u, v);
            PointSet bt = bisector(xt, u, v);
            PointSet bs = bisector(xs, u, v);
            if (!subset(b, bt) || !subset(bt, bs)) return false;
          }
        }
        return true;
      };
      auto ser = [&] { return space_json(space); };
      std::string note = "s=" + format_rational(s) + " t=" + format_rational(t);
      cap2t.record(check(truncate(space, t), truncate(space, s)), space.size(), ser, note);
      capt.record(check(truncate_at(space, t), truncate_at(space, s)), space.size(), ser, note);
    }
  }
  suite.properties = {cap2t, capt};
  return suite;
}

SuiteReport verify_truncation(std::span<const FiniteMetricSpace> spaces,
                              std::span<const std::pair<Rational, Rational>> st_pairs, const SolveOptions& options) {
  SuiteReport suite{"truncation", {}};
  PropertyResult chain = property("dimension_chain");
  for (const auto& space : spaces) {
    const std::size_t k_last = max_k(space) + 1;
    auto base = independent_dims(space, k_last, options);
    for (const auto& [s, t] : st_pairs) {
      auto with_t = independent_dims(truncate(space, t), k_last, options);
      auto with_s = independent_dims(truncate(space, s), k_last, options);
      bool ok = !any_bounded(base) && !any_bounded(with_t) && !any_bounded(with_s);
      for (std::size_t i = 0; i < k_last && ok; ++i) {
        ok = with_s[i].optimum >= with_t[i].optimum && with_t[i].optimum >= base[i].optimum;
      }
      chain.record(ok, space.size(), [&] { return space_json(space); },
                   "s=" + format_rational(s) + " t=" + format_rational(t) + ": d=" + show(optima(base)) +
                       " d^t=" + show(optima(with_t)) + " d^s=" + show(optima(with_s)));
    }
  }
  suite.properties = {chain};
  auto nesting = verify_nesting(spaces, st_pairs);
  suite.properties.insert(suite.properties.end(), nesting.properties.begin(), nesting.properties.end());
  return suite;
}

SuiteReport verify_join(std::span<const JoinInstance> joins, const SolveOptions& options) {
  SuiteReport suite{"join", {}};
  PropertyResult first = property("truncation_sum"), second = property("join_superadditive");
  for (const auto& j : joins) {
    const FiniteMetricSpace joined = join(j.left, j.right, j.t);
    const std::size_t k_last = std::max(max_k(j.left), max_k(j.right)) + 1;
    auto d1 = independent_dims(j.left, k_last, options);
    auto d2 = independent_dims(j.right, k_last, options);
    auto t1 = independent_dims(truncate(j.left, j.t), k_last, options);
    auto t2 = independent_dims(truncate(j.right, j.t), k_last, options);
    auto dj = independent_dims(joined, k_last, options);
    const bool bounded = any_bounded(d1) || any_bounded(d2) || any_bounded(t1) || any_bounded(t2) || any_bounded(dj);
    bool a = !bounded, b = !bounded;
    for (std::size_t i = 0; i < k_last; ++i) {
      ExtendedNat plain = d1[i].optimum + d2[i].optimum;
      ExtendedNat trunc = t1[i].optimum + t2[i].optimum;
      a = a && plain <= trunc;
      b = b && trunc <= dj[i].optimum;
    }
    auto ser = [&] { return join_json(j); };
    const std::size_t points = joined.size();
    first.record(a, points, ser, "dim(X1)+dim(X2) exceeds dim^t(X1)+dim^t(X2)");
    second.record(b, points, ser, "dim^t(X1)+dim^t(X2) exceeds dim^t(X1+X2): join " + show(optima(dj)));
  }
  suite.properties = {first, second};
  return suite;
}

SuiteReport verify_join_equality(std::span<const JoinInstance> joins, const SolveOptions& options) {
  SuiteReport suite{"join-equality", {}};
  PropertyResult eq = property("join_additive_above_diameter");
  for (const auto& j : joins) {
    auto ser = [&] { return join_json(j); };
    const FiniteMetricSpace joined = join(j.left, j.right, j.t);
    if (!(j.t > j.left.diameter() && j.t > j.right.diameter())) {
      eq.record(false, joined.size(), ser, "precondition: t must exceed both diameters");
      continue;
    }
    const std::size_t k_last = std::max(max_k(j.left), max_k(j.right)) + 1;
    auto d1 = independent_dims(j.left, k_last, options);
    auto d2 = independent_dims(j.right, k_last, options);
    auto dj = independent_dims(joined, k_last, options);
    bool ok = !any_bounded(d1) && !any_bounded(d2) && !any_bounded(dj);
    for (std::size_t i = 0; i < k_last && ok; ++i) ok = dj[i].optimum == d1[i].optimum + d2[i].optimum;
    eq.record(ok, joined.size(), ser,
              "join " + show(optima(dj)) + " vs parts " + show(optima(d1)) + " + " + show(optima(d2)));
  }
  suite.properties = {eq};
  return suite;
}

SuiteReport verify_bipartite(std::span<const Graph> graphs) {
  SuiteReport suite{"bipartite", {}};
  PropertyResult odd = property("odd_distance_bisectors_empty");
  for (const auto& g : graphs) {
    auto report = check_odd_distance_bisectors(g);
    bool ok = report.bipartite && report.holds();
    odd.record(ok, g.vertex_count(), [&] { return graph_json(g); },
               report.bipartite ? std::to_string(report.nonempty.size()) + " odd pairs with non-empty bisector"
                                : "graph is not bipartite");
  }
  suite.properties = {odd};
  return suite;
}

SuiteReport verify_oracle(std::span<const FiniteMetricSpace> spaces, const SolveOptions& options) {
  SuiteReport suite{"oracle", {}};
  PropertyResult eq = property("exact_matches_bruteforce");
  for (const auto& space : spaces) {
    const std::size_t k_last = max_k(space) + 1;
    auto exact = independent_dims(space, k_last, options);
    bool ok = !any_bounded(exact);
    std::string note;
    for (std::size_t k = 1; k <= k_last && ok; ++k) {
      ExtendedNat brute = dim_bruteforce(space, k);
      if (brute != exact[k - 1].optimum) {
        ok = false;
        note = "k=" + std::to_string(k) + ": exact " + exact[k - 1].optimum.str() + " brute " + brute.str();
      }
    }
    eq.record(ok, space.size(), [&] { return space_json(space); }, note);
  }
  suite.properties = {eq};
  return suite;
}

SuiteReport verify_permutation(std::span<const FiniteMetricSpace> spaces, std::uint64_t seed,
                               const SolveOptions& options) {
  SuiteReport suite{"permutation", {}};
  PropertyResult same = property("optimum_invariant"), mapk = property("max_k_invariant");
  std::mt19937_64 rng(seed);
  for (const auto& space : spaces) {
    std::vector<PointIndex> perm(space.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const FiniteMetricSpace moved = permute(space, perm);
    const std::size_t k_last = max_k(space) + 1;
    auto a = independent_dims(space, k_last, options);
    auto b = independent_dims(moved, k_last, options);
    auto ser = [&] { return space_json(space); };
    same.record(optima(a) == optima(b), space.size(), ser, show(optima(a)) + " vs " + show(optima(b)));
    mapk.record(max_k(space) == max_k(moved), space.size(), ser, "max_k changed under relabelling");
  }
  suite.properties = {same, mapk};
  return suite;
}

std::vector<std::pair<Rational, Rational>> default_truncation_pairs() {
  return {{Rational(1), Rational(2)}, {Rational(1), Rational(4)}, {Rational(2), Rational(4)}};
}

std::vector<JoinInstance> random_joins(InstanceGenerator& gen, std::size_t count, std::size_t max_part,
                                       bool above_diameters) {
  const Rational choices[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  std::vector<JoinInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto left = prefix_labels(gen.mixed(gen.size_between(2, max_part)), "L.");
    auto right = prefix_labels(gen.mixed(gen.size_between(2, max_part)), "R.");
    Rational t;
    if (above_diameters) {
      t = std::max(left.diameter(), right.diameter()) + Rational(1, 2);
    } else {
      t = choices[gen.size_between(0, std::size(choices) - 1)];
    }
    out.push_back({std::move(left), std::move(right), t});
  }
  return out;
}

}  // namespace kmetric
