#include "fractality/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace fractality {

Graph Graph::from_edges(V n, const std::vector<Edge> &edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (Edge e : edges) {
    if (e.first == e.second) continue;
    if (e.first > e.second) std::swap(e.first, e.second);
    es.push_back(e);
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());

  Graph g;
  g.n_ = n;
  g.m_ = (long long)es.size();
  g.offset_.assign((std::size_t)n + 1, 0);
  for (const Edge &e : es) {
    ++g.offset_[(std::size_t)e.first + 1];
    ++g.offset_[(std::size_t)e.second + 1];
  }
  for (V v = 0; v < n; ++v) g.offset_[(std::size_t)v + 1] += g.offset_[v];
  g.adj_.resize((std::size_t)(2 * g.m_));
  std::vector<long long> cursor(g.offset_.begin(), g.offset_.end() - 1);
  for (const Edge &e : es) {
    g.adj_[(std::size_t)cursor[e.first]++] = e.second;
    g.adj_[(std::size_t)cursor[e.second]++] = e.first;
  }
  for (V v = 0; v < n; ++v)
    std::sort(g.adj_.begin() + g.offset_[v], g.adj_.begin() + g.offset_[v + 1]);
  return g;
}

Graph load_edge_list(std::istream &in) {
  std::unordered_map<long long, V> id;
  std::vector<std::pair<long long, long long>> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    long long a = 0, b = 0;
    std::istringstream first(tok);
    if (!(first >> a) || !first.eof())
      throw ParseError(lineno, "expected an integer vertex id");
    if (!(ls >> b)) throw ParseError(lineno, "expected two vertex ids");
    if (ls >> tok) throw ParseError(lineno, "trailing data after edge");
    id.try_emplace(a, (V)id.size());
    id.try_emplace(b, (V)id.size());
    raw.push_back({a, b});
  }
  if (id.empty()) throw ParseError(0, "no edges in input");

  // Ids that already form a dense 0..n-1 range are kept as-is, so writing a
  // graph and loading it back is an exact round trip. Anything else is
  // compacted in first-appearance order.
  V n = (V)id.size();
  bool dense = true;
  for (const auto &kv : id)
    if (kv.first < 0 || kv.first >= n) {
      dense = false;
      break;
    }
  if (dense)
    for (auto &kv : id) kv.second = (V)kv.first;

  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto &pr : raw) {
    V u = id.at(pr.first);
    V v = id.at(pr.second);
    if (u != v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

void write_edge_list(const Graph &g, std::ostream &out) {
  for (V v = 0; v < g.num_vertices(); ++v)
    for (V w : g.neighbors(v))
      if (v < w) out << v << ' ' << w << '\n';
}

std::vector<V> neighborhood(const Graph &g, V v, int d) {
  std::vector<V> dist((std::size_t)g.num_vertices(), -1);
  std::vector<V> queue{v};
  dist[v] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    V u = queue[head];
    if (dist[u] == d) break;
    for (V w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

long long coverage_size(const Graph &g, const std::vector<V> &centers, int l) {
  std::vector<V> dist((std::size_t)g.num_vertices(), -1);
  std::vector<V> queue;
  for (V c : centers)
    if (dist[c] < 0) {
      dist[c] = 0;
      queue.push_back(c);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    V u = queue[head];
    if (dist[u] == l) break;
    for (V w : g.neighbors(u))
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return (long long)queue.size();
}

}  // namespace fractality
