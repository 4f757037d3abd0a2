#include "fractality/boxcover.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <utility>

#include "fractality/rng.hpp"

namespace fractality {

namespace {

struct BuildOutcome {
  // per-vertex collected ranks, ascending; exact balls until a switch
  std::vector<std::vector<rank_t>> entries;
  bool switched = false;
  long long traversals = 0;
};

// Inserts r keeping xs sorted and unique, bounded by cap entries. Returns
// true when r was kept, i.e. the vertex joins the next frontier.
bool bounded_insert(std::vector<rank_t> &xs, rank_t r, std::size_t cap) {
  auto it = std::lower_bound(xs.begin(), xs.end(), r);
  if (it != xs.end() && *it == r) return false;
  if (xs.size() >= cap) {
    if (it == xs.end()) return false;
    xs.insert(it, r);
    xs.pop_back();
    return true;
  }
  xs.insert(it, r);
  return true;
}

// Rank propagation over l rounds in ascending rank order. With
// switch_threshold < 0 the capacity is k from the start; otherwise entries
// are unbounded until their total exceeds the threshold, when every list is
// cut back to its k smallest and the build continues bounded.
BuildOutcome build_core(const Graph &g, int l, const RankAssignment &ranks,
                        int k, const std::vector<char> &active,
                        double switch_threshold) {
  const V n = g.num_vertices();
  BuildOutcome out;
  out.entries.resize((std::size_t)n);
  bool bounded = switch_threshold < 0;
  out.switched = bounded;
  std::size_t cap = bounded ? (std::size_t)k : (std::size_t)-1;
  long long total = 0;

  // frontier pairs (rank, vertex) come out ascending by rank because each
  // round scans the previous frontier in that order
  std::vector<std::pair<rank_t, V>> frontier, next;
  for (V r = 0; r < n; ++r) {
    V v = ranks.vertex_of[r];
    if (!active.empty() && !active[v]) continue;
    out.entries[v].push_back((rank_t)r);
    ++total;
    frontier.push_back({(rank_t)r, v});
  }
  auto maybe_switch = [&] {
    if (bounded || (double)total <= switch_threshold) return;
    bounded = true;
    out.switched = true;
    cap = (std::size_t)k;
    for (auto &xs : out.entries)
      if (xs.size() > cap) xs.resize(cap);
  };
  maybe_switch();

  for (int round = 0; round < l && !frontier.empty(); ++round) {
    next.clear();
    for (const auto &[r, x] : frontier) {
      for (V y : g.neighbors(x)) {
        ++out.traversals;
        std::size_t before = out.entries[y].size();
        if (bounded_insert(out.entries[y], r, cap)) {
          total += out.entries[y].size() > before;
          next.push_back({r, y});
          maybe_switch();
        }
      }
    }
    frontier.swap(next);
  }
  return out;
}

long long pass_target(const Graph &g, double eps) {
  return (long long)std::ceil((1.0 - eps) * (double)g.num_vertices());
}

// Lazy greedy on explicit member lists; stored heap gains are upper bounds,
// so a popped candidate whose fresh gain still beats the next stored gain is
// the exact argmax, with ties on the smaller id.
template <typename Item, typename ToVertex>
void explicit_greedy_pass(const Graph &g, const BoxCoverParams &p,
                          const std::vector<std::vector<Item>> &sets,
                          ToVertex to_vertex, std::vector<int> &delta,
                          long long &covered, long long target,
                          std::vector<V> &centers, int &added) {
  std::priority_queue<std::pair<long long, V>> heap;
  for (V v = 0; v < g.num_vertices(); ++v)
    if (!sets[v].empty()) heap.push({(long long)sets[v].size(), -v});
  auto fresh_gain = [&](V v) {
    long long gain = 0;
    for (Item x : sets[v]) gain += delta[(std::size_t)to_vertex(x)] == kFar;
    return gain;
  };
  while (covered < target && !heap.empty()) {
    V v = -heap.top().second;
    heap.pop();
    long long cur = fresh_gain(v);
    if (!heap.empty() && cur < heap.top().first) {
      if (cur > 0) heap.push({cur, -v});
      continue;
    }
    if (cur == 0) break;
    centers.push_back(v);
    ++added;
    covered += exact_coverage_update(g, delta, v, p.l);
  }
}

}  // namespace

std::vector<Sketch> build_sketches(const Graph &g, int l,
                                   const RankAssignment &ranks, int k,
                                   const std::vector<char> &active,
                                   long long *edge_traversals) {
  BuildOutcome b = build_core(g, l, ranks, k, active, -1.0);
  if (edge_traversals) *edge_traversals += b.traversals;
  std::vector<Sketch> out;
  out.reserve(b.entries.size());
  for (auto &xs : b.entries) out.emplace_back(k, std::move(xs));
  return out;
}

long long exact_coverage_update(const Graph &g, std::vector<int> &delta, V v,
                                int l) {
  if (delta[v] <= 0) return 0;
  long long gained = delta[v] == kFar;
  delta[v] = 0;
  std::vector<std::pair<V, int>> queue{{v, 0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [u, d] = queue[head];
    if (d == l) continue;
    for (V w : g.neighbors(u))
      if (d + 1 < delta[w]) {
        gained += delta[w] == kFar;
        delta[w] = d + 1;
        queue.push_back({w, d + 1});
      }
  }
  return gained;
}

CoverResult sketch_box_cover(const Graph &g, const BoxCoverParams &p) {
  auto t0 = std::chrono::steady_clock::now();
  const V n = g.num_vertices();
  CoverResult res;
  std::vector<int> delta((std::size_t)n, kFar);
  const long long target = pass_target(g, p.eps);
  const double threshold = p.alpha * (double)n * (double)p.k;

  while (res.covered < target && res.passes < p.max_passes) {
    int pass = ++res.passes;
    std::vector<char> active((std::size_t)n);
    for (V v = 0; v < n; ++v) active[v] = delta[v] == kFar;
    RankAssignment ranks =
        assign_ranks(n, derive_seed(p.seed, (std::uint64_t)pass));
    BuildOutcome b = build_core(g, p.l, ranks, p.k, active, threshold);
    res.build_edge_traversals += b.traversals;

    PassTrace trace;
    trace.pass = pass;
    trace.alpha_switched = b.switched;
    int added = 0;

    if (!b.switched) {
      // the collected lists are exact balls, so run the exact greedy
      explicit_greedy_pass(
          g, p, b.entries, [&](rank_t r) { return ranks.vertex_of[r]; }, delta,
          res.covered, target, res.centers, added);
    } else {
      SketchedFamily fam;
      fam.ranks = &ranks;
      fam.k = p.k;
      fam.universe_size = 0;
      for (V v = 0; v < n; ++v) fam.universe_size += active[v];
      fam.sketches.reserve((std::size_t)n);
      for (auto &xs : b.entries) fam.sketches.emplace_back(p.k, std::move(xs));
      SelectOptions opt;
      opt.eps = p.eps;
      opt.stop_on_saturation = true;
      opt.ignore_estimate_guard = true;
      opt.on_select = [&](int id) {
        V c = (V)id;
        res.centers.push_back(c);
        ++added;
        res.covered += exact_coverage_update(g, delta, c, p.l);
        return res.covered < target;
      };
      CoverSelection sel = select_greedily_fast(fam, opt);
      for (const EventCounts &e : sel.events)
        trace.max_events = std::max(trace.max_events, (int)e.total());
    }

    trace.centers_added = added;
    trace.covered_after = res.covered;
    res.traces.push_back(trace);
    if (added == 0) break;
  }

  if (res.covered < target) {
    if (p.eps > 0.0) {
      auto t1 = std::chrono::steady_clock::now();
      res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
      throw CoverFailure("pass budget exhausted before coverage target",
                         std::move(res));
    }
    res.fallback_used = true;
    for (V v = 0; v < n; ++v)
      if (delta[v] == kFar) {
        res.centers.push_back(v);
        res.covered += exact_coverage_update(g, delta, v, p.l);
      }
  }
  auto t1 = std::chrono::steady_clock::now();
  res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

CoverResult explicit_greedy_cover(
    const std::vector<std::vector<V>> &neighbor_sets, const Graph &g,
    const BoxCoverParams &p) {
  auto t0 = std::chrono::steady_clock::now();
  const V n = g.num_vertices();
  CoverResult res;
  res.passes = 1;
  std::vector<int> delta((std::size_t)n, kFar);
  const long long target = pass_target(g, p.eps);
  PassTrace trace;
  trace.pass = 1;
  int added = 0;
  explicit_greedy_pass(
      g, p, neighbor_sets, [](V x) { return x; }, delta, res.covered, target,
      res.centers, added);
  trace.centers_added = added;
  trace.covered_after = res.covered;
  res.traces.push_back(trace);
  auto t1 = std::chrono::steady_clock::now();
  res.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

std::vector<V> brute_force_box_cover(const Graph &g, int l) {
  const V n = g.num_vertices();
  if (n > 25)
    throw std::invalid_argument("exact search is limited to 25 vertices");
  using Mask = std::uint32_t;
  const Mask all = (Mask(1) << n) - 1;

  std::vector<Mask> ball((std::size_t)n, 0);
  for (V v = 0; v < n; ++v)
    for (V x : neighborhood(g, v, l)) ball[v] |= Mask(1) << x;

  // keep only dominant balls; equal balls keep their smallest center
  std::vector<V> cands;
  for (V v = 0; v < n; ++v) {
    bool dominated = false;
    for (V w = 0; w < n && !dominated; ++w) {
      if (w == v) continue;
      if ((ball[v] | ball[w]) != ball[w]) continue;
      dominated = ball[v] != ball[w] || w < v;
    }
    if (!dominated) cands.push_back(v);
  }
  std::sort(cands.begin(), cands.end(), [&](V a, V b) {
    int pa = std::popcount(ball[a]), pb = std::popcount(ball[b]);
    return pa != pb ? pa > pb : a < b;
  });
  std::vector<std::vector<V>> owners((std::size_t)n);
  for (V c : cands)
    for (V x = 0; x < n; ++x)
      if (ball[c] >> x & 1) owners[x].push_back(c);
  if (n == 0) return {};

  // Branch on the element with the fewest owners; prune by the counting
  // bound and by masks already proven infeasible at the same budget.
  std::vector<V> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](V a, V b) {
    return owners[a].size() != owners[b].size()
               ? owners[a].size() < owners[b].size()
               : a < b;
  });
  int max_ball = 1;
  for (V c : cands) max_ball = std::max(max_ball, std::popcount(ball[c]));
  std::unordered_map<Mask, int> failed;

  std::vector<V> chosen, best;
  auto dfs = [&](auto &&self, Mask uncovered, int budget) -> bool {
    if (uncovered == 0) return true;
    if ((std::popcount(uncovered) + max_ball - 1) / max_ball > budget)
      return false;
    auto hit = failed.find(uncovered);
    if (hit != failed.end() && hit->second >= budget) return false;
    V x = 0;
    for (V e : order)
      if (uncovered >> e & 1) {
        x = e;
        break;
      }
    for (V c : owners[x]) {
      chosen.push_back(c);
      if (self(self, uncovered & ~ball[c], budget - 1)) return true;
      chosen.pop_back();
    }
    int &known = failed[uncovered];
    known = std::max(known, budget);
    return false;
  };
  for (int size = (n + max_ball - 1) / max_ball; size <= (int)cands.size();
       ++size) {
    chosen.clear();
    if (dfs(dfs, all, size)) {
      best = chosen;
      break;
    }
  }
  return best;
}

}  // namespace fractality
