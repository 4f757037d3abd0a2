#include "fractality/generators.hpp"

#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fractality/rng.hpp"

namespace fractality {

namespace {

// Path of len edges from a to b through fresh vertices; len = 1 keeps the
// direct edge.
void add_path(std::vector<Edge> &edges, V a, V b, int len, V &next_id) {
  V prev = a;
  for (int i = 1; i < len; ++i) {
    V mid = next_id++;
    edges.push_back({prev, mid});
    prev = mid;
  }
  edges.push_back({prev, b});
}

}  // namespace

Graph gen_flower(int u, int v, int g) {
  if (u < 1 || v < u || u + v < 3 || g < 1)
    throw std::invalid_argument("flower requires 1 <= u <= v, u + v >= 3, g >= 1");
  const int w = u + v;
  V n = (V)w;
  std::vector<Edge> edges;
  for (int i = 0; i < w; ++i) edges.push_back({(V)i, (V)((i + 1) % w)});
  for (int gen = 2; gen <= g; ++gen) {
    std::vector<Edge> next;
    next.reserve(edges.size() * (std::size_t)w);
    for (const Edge &e : edges) {
      add_path(next, e.first, e.second, u, n);
      add_path(next, e.first, e.second, v, n);
    }
    edges = std::move(next);
  }
  return Graph::from_edges(n, edges);
}

Graph gen_shm(int c, int e, int g) {
  if (c < 1 || (e != 0 && e != 1) || g < 1)
    throw std::invalid_argument("shm requires c >= 1, e in {0, 1}, g >= 1");
  V n = 5;
  std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  for (int gen = 2; gen <= g; ++gen) {
    const V old_n = n;
    std::vector<long long> deg((std::size_t)old_n, 0);
    for (const Edge &ed : edges) {
      ++deg[ed.first];
      ++deg[ed.second];
    }
    // fresh[x] walks x's newly attached leaves as bridges consume them;
    // c >= 1 guarantees one leaf per incident old edge
    std::vector<V> fresh((std::size_t)old_n, 0);
    std::vector<Edge> next;
    next.reserve(edges.size() * (std::size_t)(2 * c + 2));
    for (V x = 0; x < old_n; ++x) {
      fresh[x] = n;
      for (long long i = 0; i < (long long)c * deg[x]; ++i)
        next.push_back({x, n++});
    }
    for (const Edge &ed : edges) {
      next.push_back({fresh[ed.first]++, fresh[ed.second]++});
      if (e == 1) next.push_back(ed);
    }
    edges = std::move(next);
  }
  return Graph::from_edges(n, edges);
}

Graph gen_ba(int c, int t, std::uint64_t seed) {
  if (c < 1 || t < 0)
    throw std::invalid_argument("ba requires c >= 1, t >= 0");
  const V n = (V)(125LL << t);
  std::vector<Edge> edges;
  for (V a = 0; a <= c; ++a)
    for (V b = a + 1; b <= c; ++b) edges.push_back({a, b});
  std::mt19937_64 gen(seed);
  std::vector<V> targets;
  for (V v = (V)c + 1; v < n; ++v) {
    targets.clear();
    while ((int)targets.size() < c) {
      const Edge &ed = edges[next_below(gen, edges.size())];
      V cand = next_below(gen, 2) ? ed.second : ed.first;
      bool dup = false;
      for (V x : targets) dup = dup || x == cand;
      if (!dup) targets.push_back(cand);
    }
    for (V x : targets) edges.push_back({x, v});
  }
  return Graph::from_edges(n, edges);
}

}  // namespace fractality
