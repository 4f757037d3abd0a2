#pragma once

#include <cstdint>
#include <vector>

#include "fractality/graph.hpp"

namespace fractality {

// Permutation rank index; the realized rank value of index r is
// (r + 1) / (n + 1), all distinct by construction.
using rank_t = std::uint32_t;

// Random bijection vertex -> rank value in (0, 1). Comparisons happen on the
// permutation integers; the real value is materialized only in threshold and
// estimate arithmetic, so there are no floating-point ties anywhere.
struct RankAssignment {
  std::uint64_t seed = 0;
  V n = 0;
  std::vector<rank_t> rank_of;  // vertex -> permutation index
  std::vector<V> vertex_of;     // permutation index -> vertex

  double value(rank_t r) const { return (r + 1) / (n + 1.0); }
};

RankAssignment assign_ranks(V n, std::uint64_t seed);

// Bottom-k min-hash sketch: the k smallest-rank items of the underlying set,
// stored as ascending rank indices. Holds the whole set when it has fewer
// than k items.
class Sketch {
 public:
  Sketch() = default;
  explicit Sketch(int k) : k_(k) {}
  Sketch(int k, std::vector<rank_t> ranks) : k_(k), ranks_(std::move(ranks)) {}

  int k() const { return k_; }
  int size() const { return static_cast<int>(ranks_.size()); }
  bool empty() const { return ranks_.empty(); }
  bool full() const { return size() >= k_; }
  rank_t rank_at(int i) const { return ranks_[i]; }  // 0-based, ascending
  const std::vector<rank_t> &ranks() const { return ranks_; }

  // Inserts one item, keeping the k smallest distinct ranks. Returns true if
  // the item was inserted and kept.
  bool insert(rank_t r);

  bool operator==(const Sketch &o) const = default;

 private:
  int k_ = 0;
  std::vector<rank_t> ranks_;
};

// Builds the sketch of an item set directly.
Sketch sketch_from_items(const std::vector<V> &items,
                         const RankAssignment &ranks, int k);

// Bottom-k sketch of the union of the two underlying sets, in one linear
// pass over the two sorted entry lists. Throws on mismatched k.
Sketch merge_and_purify(const Sketch &a, const Sketch &b);

// tau(S): the k-th smallest rank value if the sketch is full, otherwise
// (k - 1) / |S|. Throws on an empty sketch.
double threshold_rank(const Sketch &s, const RankAssignment &ranks);

// C~(S) = (k - 1) / tau(S~); exactly |S| when |S| < k.
double estimate_cardinality(const Sketch &s, const RankAssignment &ranks);

}  // namespace fractality
