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

#include "kmetric/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include <boost/integer/common_factor_rt.hpp>

#include "kmetric/error.hpp"

namespace kmetric {
namespace {

using boost::multiprecision::cpp_int;

// Integer image of the matrix: every entry times the lcm of all
// denominators. Empty when any scaled entry would not fit in 62 bits.
std::vector<std::int64_t> scale_to_integers(const std::vector<Rational>& values) {
  cpp_int lcm = 1;
  for (const auto& v : values) {
    cpp_int den = boost::multiprecision::denominator(v);
    if (den != 1) lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  const cpp_int limit = cpp_int(1) << 62;
  std::vector<std::int64_t> scaled;
  scaled.reserve(values.size());
  for (const auto& v : values) {
    cpp_int s = boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v));
    if (s >= limit || s <= -limit) return {};
    scaled.push_back(s.convert_to<std::int64_t>());
  }
  return scaled;
}

void check_index(const FiniteMetricSpace& space, PointIndex i) {
  if (i >= space.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "point index " + std::to_string(i) + " out of range for " + std::to_string(space.size()) + " points",
                {std::to_string(i)});
  }
}

void check_pair(const FiniteMetricSpace& space, PointIndex u, PointIndex v) {
  check_index(space, u);
  check_index(space, v);
  if (u == v) throw Error(ErrorKind::SamePoint, "bisector of a point with itself", {space.label(u)});
}

}  // namespace

std::optional<PointIndex> FiniteMetricSpace::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointIndex>(it - labels_.begin());
}

DistanceMatrix FiniteMetricSpace::matrix() const {
  DistanceMatrix m(size(), std::vector<Rational>(size()));
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) m[i][j] = distance(i, j);
  return m;
}

Rational FiniteMetricSpace::diameter() const {
  Rational best = 0;
  for (const auto& d : dist_) best = std::max(best, d);
  return best;
}

FiniteMetricSpace build_space(std::vector<std::string> labels, const DistanceMatrix& dist, Metadata meta) {
  const std::size_t n = labels.size();
  if (dist.size() != n) {
    throw Error(ErrorKind::MatrixShape, "distance matrix has " + std::to_string(dist.size()) + " rows for " +
                                            std::to_string(n) + " labels");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) {
      throw Error(ErrorKind::MatrixShape, "row " + std::to_string(i) + " has " + std::to_string(dist[i].size()) +
                                              " entries, expected " + std::to_string(n));
    }
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, "label '" + l + "' appears twice", {l});
    }
  }
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "a metric space needs at least 2 points");

  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i][i] != 0) {
      throw Error(ErrorKind::NonzeroDiagonal, "d(" + labels[i] + "," + labels[i] + ") is not 0", {labels[i]});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& a = dist[i][j];
      const auto& b = dist[j][i];
      if (a < 0 || b < 0) {
        throw Error(ErrorKind::NegativeDistance, "negative distance between " + labels[i] + " and " + labels[j],
                    {labels[i], labels[j]});
      }
      if (a == 0 || b == 0) {
        throw Error(ErrorKind::ZeroOffDiagonal, "distinct points " + labels[i] + " and " + labels[j] + " at distance 0",
                    {labels[i], labels[j]});
      }
      if (a != b) {
        throw Error(ErrorKind::AsymmetricDistance,
                    "d(" + labels[i] + "," + labels[j] + ")=" + format_rational(a) + " but d(" + labels[j] + "," +
                        labels[i] + ")=" + format_rational(b),
                    {labels[i], labels[j]});
      }
    }
  }

  FiniteMetricSpace space;
  space.dist_.reserve(n * n);
  for (const auto& row : dist) space.dist_.insert(space.dist_.end(), row.begin(), row.end());
  space.scaled_ = scale_to_integers(space.dist_);

  auto violation = [&](std::size_t i, std::size_t j, std::size_t k) {
    throw Error(ErrorKind::TriangleViolation,
                "d(" + labels[i] + "," + labels[k] + ") > d(" + labels[i] + "," + labels[j] + ") + d(" + labels[j] +
                    "," + labels[k] + ")",
                {labels[i], labels[j], labels[k]});
  };
  // Reports (i, j, k) with d(i,k) > d(i,j) + d(j,k), i < k, j the detour point.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        bool bad = false;
        if (!space.scaled_.empty()) {
          const auto& s = space.scaled_;
          bad = s[i * n + k] > s[i * n + j] + s[j * n + k];
        } else {
          bad = space.dist_[i * n + k] > space.dist_[i * n + j] + space.dist_[j * n + k];
        }
        if (bad) violation(i, j, k);
      }
    }
  }

  space.labels_ = std::move(labels);
  space.meta_ = std::move(meta);
  if (n == 2) {
    space.warnings_.push_back("space has only 2 points; k-metric theory is trivial below 3 points");
  }
  return space;
}

PointSet bisector(const FiniteMetricSpace& space, PointIndex u, PointIndex v) {
  check_pair(space, u, v);
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (space.equidistant(x, u, v)) out.push_back(x);
  }
  return PointSet(std::move(out));
}

PointSet distinguishers(const FiniteMetricSpace& space, PointIndex u, PointIndex v) {
  check_pair(space, u, v);
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (!space.equidistant(x, u, v)) out.push_back(x);
  }
  return PointSet(std::move(out));
}

std::size_t DistinguisherMap::pair_index(PointIndex u, PointIndex v) const {
  if (u > v) std::swap(u, v);
  if (u == v || v >= n) throw Error(ErrorKind::SamePoint, "no distinguisher set for this pair");
  // Pairs (0,1),(0,2),...,(0,n-1),(1,2),... : row u starts after u rows.
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

std::size_t DistinguisherMap::min_set_size() const {
  std::size_t best = n;
  for (const auto& s : sets) best = std::min(best, s.size());
  return best;
}

DistinguisherMap all_distinguishers(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  DistinguisherMap map;
  map.n = n;
  map.pairs.reserve(n * (n - 1) / 2);
  map.sets.reserve(n * (n - 1) / 2);
  for (PointIndex u = 0; u < n; ++u) {
    for (PointIndex v = u + 1; v < n; ++v) {
      std::vector<PointIndex> out;
      for (PointIndex x = 0; x < n; ++x) {
        if (!space.equidistant(x, u, v)) out.push_back(x);
      }
      map.pairs.push_back({u, v});
      map.sets.emplace_back(std::move(out));
    }
  }
  return map;
}

KGeneratorCertificate is_k_generator(const DistinguisherMap& map, const PointSet& set, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::NonpositiveParameter, "k must be at least 1");
  if (!set.fits(map.n)) throw Error(ErrorKind::IndexOutOfRange, "candidate set has an index out of range");
  KGeneratorCertificate cert;
  cert.k = k;
  cert.set = set;
  cert.coverage.reserve(map.sets.size());
  cert.min_coverage = std::numeric_limits<std::size_t>::max();
  for (std::size_t p = 0; p < map.sets.size(); ++p) {
    std::size_t c = set.intersection_size(map.sets[p]);
    cert.coverage.push_back(c);
    cert.min_coverage = std::min(cert.min_coverage, c);
    if (c < k && !cert.witness) cert.witness = map.pairs[p];
  }
  if (map.sets.empty()) cert.min_coverage = 0;
  cert.valid = !cert.witness.has_value();
  return cert;
}

KGeneratorCertificate is_k_generator(const FiniteMetricSpace& space, const PointSet& set, std::size_t k) {
  return is_k_generator(all_distinguishers(space), set, k);
}

std::size_t max_k(const DistinguisherMap& map) { return map.min_set_size(); }

std::size_t max_k(const FiniteMetricSpace& space) { return max_k(all_distinguishers(space)); }

FiniteMetricSpace truncate_at(const FiniteMetricSpace& space, const Rational& cap) {
  if (cap <= 0) throw Error(ErrorKind::NonpositiveParameter, "truncation cap must be positive");
  DistanceMatrix m = space.matrix();
  for (auto& row : m)
    for (auto& d : row) d = std::min(d, cap);
  Metadata meta = space.meta();
  meta["truncation_cap"] = format_rational(cap);
  return build_space(space.labels(), m, std::move(meta));
}

FiniteMetricSpace truncate(const FiniteMetricSpace& space, const Rational& t) {
  if (t <= 0) throw Error(ErrorKind::NonpositiveParameter, "truncation parameter t must be positive");
  return truncate_at(space, 2 * t);
}

FiniteMetricSpace join(const FiniteMetricSpace& a, const FiniteMetricSpace& b, const Rational& t) {
  if (t <= 0) throw Error(ErrorKind::NonpositiveParameter, "join parameter t must be positive");
  {
    std::set<std::string> left(a.labels().begin(), a.labels().end());
    std::vector<std::string> clash;
    for (const auto& l : b.labels())
      if (left.count(l)) clash.push_back(l);
    if (!clash.empty()) {
      throw Error(ErrorKind::LabelCollision, "label '" + clash.front() + "' occurs in both parts", clash);
    }
  }
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  const Rational cap = 2 * t;
  DistanceMatrix m(n, std::vector<Rational>(n, t));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) m[i][j] = std::min(a.distance(i, j), cap);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m[na + i][na + j] = std::min(b.distance(i, j), cap);
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  Metadata meta;
  meta["join_t"] = format_rational(t);
  meta["join_split"] = std::to_string(na);
  return build_space(std::move(labels), m, std::move(meta));
}

FiniteMetricSpace permute(const FiniteMetricSpace& space, std::span<const PointIndex> perm) {
  const std::size_t n = space.size();
  if (perm.size() != n) throw Error(ErrorKind::MatrixShape, "permutation length does not match space size");
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw Error(ErrorKind::IndexOutOfRange, "not a permutation");
    hit[p] = true;
  }
  std::vector<std::string> labels(n);
  DistanceMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels[perm[i]] = space.label(i);
    for (std::size_t j = 0; j < n; ++j) m[perm[i]][perm[j]] = space.distance(i, j);
  }
  return build_space(std::move(labels), m, space.meta());
}

FiniteMetricSpace prefix_labels(const FiniteMetricSpace& space, std::string_view prefix) {
  std::vector<std::string> labels;
  labels.reserve(space.size());
  for (const auto& l : space.labels()) labels.push_back(std::string(prefix) + l);
  return build_space(std::move(labels), space.matrix(), space.meta());
}

FiniteMetricSpace from_line_points(std::vector<std::string> labels, const std::vector<Rational>& coords,
                                   Metadata meta) {
  if (coords.size() != labels.size()) throw Error(ErrorKind::MatrixShape, "one coordinate per label required");
  const std::size_t n = coords.size();
  DistanceMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = abs(Rational(coords[i] - coords[j]));
  return build_space(std::move(labels), m, std::move(meta));
}

FiniteMetricSpace from_euclidean_points(std::vector<std::string> labels,
                                        const std::vector<std::vector<double>>& coords, int digits) {
  const std::size_t n = coords.size();
  if (n != labels.size()) throw Error(ErrorKind::MatrixShape, "one point per label required");
  if (n == 0) throw Error(ErrorKind::TooFewPoints, "no points");
  const std::size_t dim = coords.front().size();
  for (const auto& c : coords) {
    if (c.size() != dim || dim == 0) throw Error(ErrorKind::MatrixShape, "points must share a positive dimension");
  }
  Metadata meta;
  meta["quantization_digits"] = std::to_string(digits);

  if (dim == 1) {
    std::vector<Rational> xs;
    for (const auto& c : coords) xs.push_back(quantize(c[0], digits));
    meta["closure_adjusted"] = "0";
    return from_line_points(std::move(labels), xs, std::move(meta));
  }

  DistanceMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      long double sum = 0;
      for (std::size_t a = 0; a < dim; ++a) {
        long double delta = static_cast<long double>(coords[i][a]) - coords[j][a];
        sum += delta * delta;
      }
      m[i][j] = m[j][i] = quantize(static_cast<double>(std::sqrt(sum)), digits);
    }
  }
  std::size_t adjusted = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        Rational via = m[i][k] + m[k][j];
        if (via < m[i][j]) {
          m[i][j] = via;
          ++adjusted;
        }
      }
    }
  }
  meta["closure_adjusted"] = std::to_string(adjusted);
  return build_space(std::move(labels), m, std::move(meta));
}

}  // namespace kmetric
