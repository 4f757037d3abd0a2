#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fractality {

using V = std::int32_t;
using Edge = std::pair<V, V>;

// Thrown on malformed edge-list input; line is 1-based, 0 when the problem is
// not tied to a single line (e.g. empty input).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string &what)
      : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Undirected simple graph with ids 0..n-1 and sorted adjacency, stored CSR.
// Immutable after construction; safe to read from many threads.
class Graph {
 public:
  Graph() = default;

  // Normalizes a raw pair list: drops self-loops and duplicates, symmetrizes,
  // keeps ids as given (caller guarantees 0..n-1).
  static Graph from_edges(V n, const std::vector<Edge> &edges);

  V num_vertices() const { return n_; }
  long long num_edges() const { return m_; }

  std::span<const V> neighbors(V v) const {
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }

  V degree(V v) const { return offset_[v + 1] - offset_[v]; }

  bool operator==(const Graph &o) const = default;

 private:
  V n_ = 0;
  long long m_ = 0;
  std::vector<long long> offset_;
  std::vector<V> adj_;
};

// Reads whitespace-separated integer pairs, one edge per line; '#' lines are
// comments. Arbitrary ids are compacted to 0..n-1 in first-appearance order;
// self-loops and duplicate edges are dropped and direction is discarded.
Graph load_edge_list(std::istream &in);

// Canonical serialization: one "u v" per line, u < v, ascending.
void write_edge_list(const Graph &g, std::ostream &out);

// Exact BFS ball N_d(v), ascending vertex ids; always contains v.
std::vector<V> neighborhood(const Graph &g, V v, int d);

// |N_l(centers)| by multi-source BFS truncated at depth l.
long long coverage_size(const Graph &g, const std::vector<V> &centers, int l);

}  // namespace fractality
