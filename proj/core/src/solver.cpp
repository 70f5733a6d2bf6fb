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

#include "kmetric/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "kmetric/error.hpp"

namespace kmetric {
namespace {

using Clock = std::chrono::steady_clock;
using Word = std::uint64_t;

// Blocks of the lower bound are solved exactly by enumeration up to this many
// points.
constexpr std::size_t kMaxBlockPoints = 8;

std::size_t popcount(const Word* a, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

bool test_bit(const Word* a, std::size_t i) { return (a[i / 64] >> (i % 64)) & 1U; }
void set_bit(Word* a, std::size_t i) { a[i / 64] |= Word{1} << (i % 64); }

// The k-multicover instance: choose a smallest set of points meeting every
// constraint set at least k times. Only inclusion-minimal distinguisher sets
// are kept; any superset constraint is implied.
struct CoverInstance {
  std::size_t n = 0;
  std::size_t words = 0;
  std::size_t k = 1;
  std::vector<Word> bits;  // constraint c occupies [c*words, (c+1)*words)

  std::size_t constraints() const { return words ? bits.size() / words : 0; }
  const Word* constraint(std::size_t c) const { return bits.data() + c * words; }
};

CoverInstance make_instance(const DistinguisherMap& map, std::size_t k) {
  CoverInstance inst;
  inst.n = map.n;
  inst.words = (map.n + 63) / 64;
  inst.k = k;

  std::vector<std::vector<Word>> sets;
  sets.reserve(map.sets.size());
  for (const auto& s : map.sets) {
    std::vector<Word> b(inst.words, 0);
    for (auto p : s) set_bit(b.data(), p);
    sets.push_back(std::move(b));
  }
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> sizes(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) sizes[i] = popcount(sets[i].data(), inst.words);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] < sizes[b]; });

  std::vector<std::size_t> kept;
  for (auto i : order) {
    bool implied = false;
    for (auto j : kept) {
      bool subset = true;
      for (std::size_t w = 0; w < inst.words && subset; ++w) subset = (sets[j][w] & ~sets[i][w]) == 0;
      if (subset) {
        implied = true;
        break;
      }
    }
    if (implied) continue;
    kept.push_back(i);
    inst.bits.insert(inst.bits.end(), sets[i].begin(), sets[i].end());
  }
  return inst;
}

struct Residual {
  std::size_t constraint = 0;
  std::size_t need = 0;   // k minus current coverage
  std::size_t avail = 0;  // free points left in the set
};

struct Node {
  std::vector<Word> chosen;
  std::vector<Word> excluded;
  std::size_t count = 0;
};

enum class Outcome { Solution, Pruned, Branched };

struct SharedState {
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::mutex mutex;
  std::vector<Word> best_set;
  std::atomic<bool> timed_out{false};
  std::atomic<bool> done{false};
  std::atomic<std::uint64_t> nodes{0};
  Clock::time_point deadline;
  std::uint64_t global_lower = 0;
  bool stop_on_first = false;
};

class Searcher {
 public:
  Searcher(const CoverInstance& inst, SharedState& shared) : inst_(inst), shared_(shared) {}

  // Minimum number of additional points any completion of `node` needs,
  // from a family of point-disjoint blocks solved exactly (or, for blocks
  // too large to enumerate, by their single requirement).
  std::size_t block_bound(const std::vector<Residual>& open, const std::vector<Word>& avail) {
    const std::size_t W = inst_.words;
    std::vector<std::size_t> order(open.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      if (open[a].avail != open[b].avail) return open[a].avail < open[b].avail;
      return open[a].need > open[b].need;
    });

    struct Block {
      std::vector<Word> mask;
      std::vector<std::size_t> members;  // indices into `open`
      bool large = false;
      std::size_t need = 0;
    };
    std::vector<Block> blocks;
    std::vector<Word> used(W, 0);

    for (auto oi : order) {
      const Word* a = avail.data() + oi * W;
      bool touches = false;
      for (std::size_t w = 0; w < W; ++w) touches |= (a[w] & used[w]) != 0;
      if (!touches) {
        Block b;
        b.mask.assign(a, a + W);
        b.members.push_back(oi);
        b.large = open[oi].avail > kMaxBlockPoints;
        b.need = open[oi].need;
        blocks.push_back(std::move(b));
        for (std::size_t w = 0; w < W; ++w) used[w] |= a[w];
        continue;
      }
      Block* target = nullptr;
      bool ambiguous = false;
      for (auto& b : blocks) {
        bool hit = false;
        for (std::size_t w = 0; w < W; ++w) hit |= (a[w] & b.mask[w]) != 0;
        if (!hit) continue;
        if (target) {
          ambiguous = true;
          break;
        }
        target = &b;
      }
      if (!target || ambiguous || target->large) continue;
      std::size_t merged = 0;
      for (std::size_t w = 0; w < W; ++w) merged += static_cast<std::size_t>(std::popcount(target->mask[w] | a[w]));
      if (merged > kMaxBlockPoints) continue;
      for (std::size_t w = 0; w < W; ++w) {
        target->mask[w] |= a[w];
        used[w] |= a[w];
      }
      target->members.push_back(oi);
    }

    std::size_t total = 0;
    for (const auto& b : blocks) {
      if (b.large) {
        total += b.need;
        continue;
      }
      total += solve_block(b.mask, b.members, open, avail);
    }
    return total;
  }

  Outcome expand(const Node& node, std::vector<Node>& children) {
    const std::size_t W = inst_.words;
    const std::size_t k = inst_.k;
    shared_.nodes.fetch_add(1, std::memory_order_relaxed);

    std::vector<Residual> open;
    std::vector<Word> avail;
    for (std::size_t c = 0; c < inst_.constraints(); ++c) {
      const Word* s = inst_.constraint(c);
      std::size_t covered = 0;
      for (std::size_t w = 0; w < W; ++w) covered += static_cast<std::size_t>(std::popcount(s[w] & node.chosen[w]));
      if (covered >= k) continue;
      std::size_t free_count = 0;
      std::size_t base = avail.size();
      avail.resize(base + W);
      for (std::size_t w = 0; w < W; ++w) {
        avail[base + w] = s[w] & ~node.chosen[w] & ~node.excluded[w];
        free_count += static_cast<std::size_t>(std::popcount(avail[base + w]));
      }
      if (free_count < k - covered) return Outcome::Pruned;
      open.push_back({c, k - covered, free_count});
    }

    if (open.empty()) {
      record(node);
      return Outcome::Solution;
    }

    const std::uint64_t best = shared_.best.load();
    std::uint64_t lower = node.count + block_bound(open, avail);
    if (std::max(lower, shared_.global_lower) >= best) return Outcome::Pruned;

    // Fail-first: the open constraint with the fewest children.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < open.size(); ++i) {
      auto key = [&](const Residual& r) { return std::pair(r.avail - r.need, r.avail); };
      if (key(open[i]) < key(open[pick])) pick = i;
    }
    const Residual& r = open[pick];
    const Word* a = avail.data() + pick * W;
    std::vector<std::size_t> free_points;
    for (std::size_t p = 0; p < inst_.n; ++p)
      if (test_bit(a, p)) free_points.push_back(p);

    // Child j takes free_points[j] and rules out the ones before it, so the
    // children partition the completions that cover this constraint.
    children.clear();
    const std::size_t branches = r.avail - r.need + 1;
    for (std::size_t j = 0; j < branches; ++j) {
      Node child = node;
      set_bit(child.chosen.data(), free_points[j]);
      child.count += 1;
      for (std::size_t i = 0; i < j; ++i) set_bit(child.excluded.data(), free_points[i]);
      children.push_back(std::move(child));
    }
    return Outcome::Branched;
  }

  void dfs(const Node& node) {
    if (should_stop()) return;
    std::vector<Node> children;
    if (expand(node, children) != Outcome::Branched) return;
    for (const auto& child : children) {
      if (should_stop()) return;
      dfs(child);
    }
  }

 private:
  std::size_t solve_block(const std::vector<Word>& mask, const std::vector<std::size_t>& members,
                          const std::vector<Residual>& open, const std::vector<Word>& avail) const {
    const std::size_t W = inst_.words;
    std::vector<std::size_t> points;
    for (std::size_t p = 0; p < inst_.n; ++p)
      if (test_bit(mask.data(), p)) points.push_back(p);
    std::vector<std::pair<std::uint32_t, std::size_t>> local;
    std::size_t floor = 0;
    for (auto oi : members) {
      std::uint32_t m = 0;
      for (std::size_t i = 0; i < points.size(); ++i)
        if (test_bit(avail.data() + oi * W, points[i])) m |= 1U << i;
      local.emplace_back(m, open[oi].need);
      floor = std::max(floor, open[oi].need);
    }
    std::size_t best = points.size() + 1;
    const std::uint32_t limit = 1U << points.size();
    for (std::uint32_t s = 0; s < limit; ++s) {
      auto size = static_cast<std::size_t>(std::popcount(s));
      if (size >= best || size < floor) continue;
      bool ok = true;
      for (const auto& [m, need] : local) {
        if (static_cast<std::size_t>(std::popcount(s & m)) < need) {
          ok = false;
          break;
        }
      }
      if (ok) best = size;
    }
    // The block's constraints are always satisfiable by its own points since
    // each was feasible on entry; best <= points.size().
    return best;
  }

  void record(const Node& node) {
    std::lock_guard lock(shared_.mutex);
    if (node.count < shared_.best.load()) {
      shared_.best_set = node.chosen;
      shared_.best.store(node.count);
    }
    if (shared_.stop_on_first || node.count <= shared_.global_lower) shared_.done.store(true);
  }

  bool should_stop() {
    if (shared_.done.load(std::memory_order_relaxed) || shared_.timed_out.load(std::memory_order_relaxed)) {
      return true;
    }
    if ((++since_clock_check_ & 63U) == 0 && Clock::now() > shared_.deadline) {
      shared_.timed_out.store(true);
      return true;
    }
    return false;
  }

  const CoverInstance& inst_;
  SharedState& shared_;
  unsigned since_clock_check_ = 0;
};

Node root_node(const CoverInstance& inst) {
  Node n;
  n.chosen.assign(inst.words, 0);
  n.excluded.assign(inst.words, 0);
  return n;
}

PointSet to_point_set(const std::vector<Word>& bits, std::size_t n) {
  std::vector<PointIndex> out;
  for (std::size_t p = 0; p < n; ++p)
    if (test_bit(bits.data(), p)) out.push_back(p);
  return PointSet(std::move(out));
}

std::vector<Word> to_bits(const PointSet& set, std::size_t words) {
  std::vector<Word> bits(words, 0);
  for (auto p : set) set_bit(bits.data(), p);
  return bits;
}

void run_sequential(const CoverInstance& inst, SharedState& shared, const Node& start) {
  Searcher searcher(inst, shared);
  searcher.dfs(start);
}

void run_parallel(const CoverInstance& inst, SharedState& shared, const Node& start, unsigned threads) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  // Breadth-first split into enough independent subtrees, then a shared
  // cursor hands them out.
  std::deque<Node> frontier{start};
  Searcher splitter(inst, shared);
  std::vector<Node> children;
  const std::size_t target = 8 * static_cast<std::size_t>(threads);
  while (!frontier.empty() && frontier.size() < target && !shared.done.load() && !shared.timed_out.load()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    if (splitter.expand(node, children) == Outcome::Branched) {
      for (auto& c : children) frontier.push_back(std::move(c));
    }
  }
  std::vector<Node> work(std::make_move_iterator(frontier.begin()), std::make_move_iterator(frontier.end()));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      Searcher local(inst, shared);
      for (std::size_t i = cursor++; i < work.size(); i = cursor++) local.dfs(work[i]);
    });
  }
}

// Disjoint-set packing at the root: sum of requirements over a greedily
// chosen family of pairwise-disjoint constraint sets.
std::size_t packing_bound(const CoverInstance& inst) {
  std::vector<std::size_t> order(inst.constraints());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> sizes(order.size());
  for (auto c : order) sizes[c] = popcount(inst.constraint(c), inst.words);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sizes[a] < sizes[b]; });
  std::vector<Word> used(inst.words, 0);
  std::size_t total = 0;
  for (auto c : order) {
    const Word* s = inst.constraint(c);
    bool disjoint = true;
    for (std::size_t w = 0; w < inst.words && disjoint; ++w) disjoint = (s[w] & used[w]) == 0;
    if (!disjoint) continue;
    for (std::size_t w = 0; w < inst.words; ++w) used[w] |= s[w];
    total += inst.k;
  }
  return total;
}

std::size_t root_block_bound(const CoverInstance& inst) {
  SharedState shared;
  Searcher s(inst, shared);
  std::vector<Residual> open;
  std::vector<Word> avail;
  for (std::size_t c = 0; c < inst.constraints(); ++c) {
    open.push_back({c, inst.k, popcount(inst.constraint(c), inst.words)});
    avail.insert(avail.end(), inst.constraint(c), inst.constraint(c) + inst.words);
  }
  return s.block_bound(open, avail);
}

// Is there a cover of size <= limit that contains `include` and avoids
// `exclude`? Returns it if so.
std::optional<std::vector<Word>> feasible_within(const CoverInstance& inst, const std::vector<Word>& include,
                                                 const std::vector<Word>& exclude, std::uint64_t limit,
                                                 Clock::time_point deadline, std::atomic<std::uint64_t>& nodes,
                                                 bool& timed_out) {
  SharedState shared;
  shared.best.store(limit + 1);
  shared.deadline = deadline;
  shared.stop_on_first = true;
  Node start;
  start.chosen = include;
  start.excluded = exclude;
  start.count = popcount(include.data(), inst.words);
  run_sequential(inst, shared, start);
  nodes += shared.nodes.load();
  timed_out = shared.timed_out.load();
  if (shared.best.load() <= limit) return shared.best_set;
  return std::nullopt;
}

}  // namespace

std::uint64_t ExtendedNat::value() const {
  if (!finite_) throw std::logic_error("ExtendedNat::value() on infinity");
  return value_;
}

std::string ExtendedNat::str() const { return finite_ ? std::to_string(value_) : std::string("inf"); }

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Bounded: return "bounded";
  }
  return "unknown";
}

std::optional<GreedyResult> greedy_upper(const DistinguisherMap& map, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::NonpositiveParameter, "k must be at least 1");
  if (k > max_k(map)) return std::nullopt;
  const std::size_t n = map.n;
  std::vector<std::size_t> coverage(map.sets.size(), 0);
  std::vector<bool> taken(n, false);
  std::vector<PointIndex> chosen;
  std::size_t deficit = map.sets.size() * k;
  while (deficit > 0) {
    std::vector<std::size_t> gain(n, 0);
    for (std::size_t p = 0; p < map.sets.size(); ++p) {
      if (coverage[p] >= k) continue;
      for (auto x : map.sets[p])
        if (!taken[x]) ++gain[x];
    }
    std::size_t pick = n;
    for (std::size_t x = 0; x < n; ++x) {
      if (!taken[x] && (pick == n || gain[x] > gain[pick])) pick = x;
    }
    // k <= max_k guarantees some untaken point still helps.
    taken[pick] = true;
    chosen.push_back(pick);
    for (std::size_t p = 0; p < map.sets.size(); ++p) {
      if (coverage[p] < k && map.sets[p].contains(pick)) {
        ++coverage[p];
        --deficit;
      }
    }
  }
  return GreedyResult{chosen.size(), PointSet(std::move(chosen))};
}

std::optional<GreedyResult> greedy_upper(const FiniteMetricSpace& space, std::size_t k) {
  return greedy_upper(all_distinguishers(space), k);
}

SolveReport dim_exact(const DistinguisherMap& map, std::size_t k, const SolveOptions& options) {
  if (k == 0) throw Error(ErrorKind::NonpositiveParameter, "k must be at least 1");
  const auto started = Clock::now();
  auto finish = [&](SolveReport& r) {
    r.elapsed_secs = std::chrono::duration<double>(Clock::now() - started).count();
    return r;
  };

  SolveReport report;
  report.k = k;
  report.lower_bound_trace.push_back({"k", k});
  std::uint64_t lower = k;
  if (options.lower_bound_hint) {
    report.lower_bound_trace.push_back({"previous_level", *options.lower_bound_hint});
    lower = std::max(lower, *options.lower_bound_hint);
  }

  if (k > max_k(map)) {
    report.status = SolveStatus::Infeasible;
    report.optimum = ExtendedNat::infinity();
    report.lower_bound = lower;
    return finish(report);
  }

  const CoverInstance inst = make_instance(map, k);
  const std::uint64_t packing = packing_bound(inst);
  const std::uint64_t block = root_block_bound(inst);
  report.lower_bound_trace.push_back({"packing", packing});
  report.lower_bound_trace.push_back({"block_packing", block});
  lower = std::max({lower, packing, block});

  auto greedy = greedy_upper(map, k);
  report.greedy_value = greedy->value;
  report.lower_bound_trace.push_back({"greedy", greedy->value});

  SharedState shared;
  shared.deadline = started + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(std::max(0.0, options.budget_secs)));
  shared.global_lower = lower;
  shared.best.store(greedy->value);
  shared.best_set = to_bits(greedy->set, inst.words);

  if (greedy->value > lower) {
    if (options.parallel) {
      run_parallel(inst, shared, root_node(inst), options.threads);
    } else {
      run_sequential(inst, shared, root_node(inst));
    }
  }
  report.nodes_explored = shared.nodes.load();

  const std::uint64_t best = shared.best.load();
  std::vector<Word> best_set = shared.best_set;
  if (shared.timed_out.load() && best > lower) {
    report.status = SolveStatus::Bounded;
    report.optimum = best;
    report.lower_bound = lower;
    report.basis = to_point_set(best_set, inst.n);
    return finish(report);
  }

  report.status = SolveStatus::Optimal;
  report.optimum = best;
  report.lower_bound = best;

  if (!options.parallel && options.canonical_basis) {
    // Fix points in index order, preferring inclusion, keeping a witness of
    // an optimal cover consistent with every decision so far.
    std::vector<Word> include(inst.words, 0);
    std::vector<Word> exclude(inst.words, 0);
    std::vector<Word> witness = best_set;
    std::atomic<std::uint64_t> extra_nodes{0};
    bool canonical = true;
    std::uint64_t included = 0;
    for (std::size_t p = 0; p < inst.n && included < best; ++p) {
      if (test_bit(witness.data(), p)) {
        set_bit(include.data(), p);
        ++included;
        continue;
      }
      std::vector<Word> trial = include;
      set_bit(trial.data(), p);
      bool timed_out = false;
      auto found = feasible_within(inst, trial, exclude, best, shared.deadline, extra_nodes, timed_out);
      if (timed_out) {
        canonical = false;
        break;
      }
      if (found) {
        include = std::move(trial);
        witness = std::move(*found);
        ++included;
      } else {
        set_bit(exclude.data(), p);
      }
    }
    report.nodes_explored += extra_nodes.load();
    best_set = witness;
    report.canonical_basis = canonical;
  }
  report.basis = to_point_set(best_set, inst.n);
  return finish(report);
}

SolveReport dim_exact(const FiniteMetricSpace& space, std::size_t k, const SolveOptions& options) {
  return dim_exact(all_distinguishers(space), k, options);
}

ExtendedNat dim_bruteforce(const FiniteMetricSpace& space, std::size_t k, std::size_t cap) {
  if (k == 0) throw Error(ErrorKind::NonpositiveParameter, "k must be at least 1");
  const std::size_t n = space.size();
  if (n > cap) {
    throw Error(ErrorKind::InstanceTooLarge,
                "brute force limited to " + std::to_string(cap) + " points, got " + std::to_string(n));
  }
  // Pair distinguisher sets straight from the distances, one pair at a time.
  std::vector<PointSet> sets;
  for (PointIndex u = 0; u < n; ++u)
    for (PointIndex v = u + 1; v < n; ++v) sets.push_back(distinguishers(space, u, v));

  auto generates = [&](const PointSet& s) {
    return std::all_of(sets.begin(), sets.end(), [&](const PointSet& d) { return s.intersection_size(d) >= k; });
  };

  std::vector<PointIndex> everything(n);
  std::iota(everything.begin(), everything.end(), 0);
  if (!generates(PointSet(everything))) return ExtendedNat::infinity();

  for (std::size_t size = 1; size <= n; ++size) {
    // Walk all size-subsets via a selection mask in lexicographic order.
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<PointIndex> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      if (generates(PointSet(std::move(s)))) return ExtendedNat(size);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return ExtendedNat::infinity();
}

std::optional<ExtendedNat> DimensionSequence::at(std::size_t k) const {
  if (k == 0) return std::nullopt;
  if (k <= entries.size()) return entries[k - 1];
  if (tail_start && k >= *tail_start) return ExtendedNat::infinity();
  return std::nullopt;
}

bool DimensionSequence::all_optimal() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const SolveReport& r) { return r.status != SolveStatus::Bounded; });
}

DimensionSequence dimension_sequence(const FiniteMetricSpace& space, std::optional<std::size_t> k_max,
                                     const SolveOptions& options) {
  const DistinguisherMap map = all_distinguishers(space);
  const std::size_t top = max_k(map);
  const std::size_t last = std::min({k_max.value_or(top), top, space.size()});

  DimensionSequence seq;
  seq.tail_start = top + 1;
  std::optional<std::uint64_t> previous_lower;
  for (std::size_t k = 1; k <= last; ++k) {
    SolveOptions level = options;
    level.lower_bound_hint = previous_lower ? std::optional<std::uint64_t>(*previous_lower + 1) : options.lower_bound_hint;
    SolveReport r = dim_exact(map, k, level);
    previous_lower = r.lower_bound;
    seq.entries.push_back(r.optimum);
    seq.reports.push_back(std::move(r));
  }
  return seq;
}

}  // namespace kmetric
