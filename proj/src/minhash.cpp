#include "fractality/minhash.hpp"

#include <algorithm>
#include <stdexcept>

#include "fractality/rng.hpp"

namespace fractality {

RankAssignment assign_ranks(V n, std::uint64_t seed) {
  RankAssignment ra;
  ra.seed = seed;
  ra.n = n;
  ra.vertex_of.resize((std::size_t)n);
  for (V v = 0; v < n; ++v) ra.vertex_of[v] = v;
  std::mt19937_64 gen(seed);
  for (V i = n - 1; i > 0; --i) {
    V j = (V)next_below(gen, (std::uint64_t)i + 1);
    std::swap(ra.vertex_of[i], ra.vertex_of[j]);
  }
  ra.rank_of.resize((std::size_t)n);
  for (V r = 0; r < n; ++r) ra.rank_of[ra.vertex_of[r]] = (rank_t)r;
  return ra;
}

bool Sketch::insert(rank_t r) {
  auto it = std::lower_bound(ranks_.begin(), ranks_.end(), r);
  if (it != ranks_.end() && *it == r) return false;
  if (full()) {
    if (it == ranks_.end()) return false;
    ranks_.insert(it, r);
    ranks_.pop_back();
  } else {
    ranks_.insert(it, r);
  }
  return true;
}

Sketch sketch_from_items(const std::vector<V> &items,
                         const RankAssignment &ranks, int k) {
  std::vector<rank_t> rs;
  rs.reserve(items.size());
  for (V v : items) rs.push_back(ranks.rank_of[v]);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  if ((int)rs.size() > k) rs.resize((std::size_t)k);
  return Sketch(k, std::move(rs));
}

Sketch merge_and_purify(const Sketch &a, const Sketch &b) {
  if (a.k() != b.k())
    throw std::invalid_argument("cannot merge sketches of different k");
  const std::vector<rank_t> &x = a.ranks();
  const std::vector<rank_t> &y = b.ranks();
  std::vector<rank_t> out;
  out.reserve(std::min((std::size_t)a.k(), x.size() + y.size()));
  std::size_t i = 0, j = 0;
  while ((int)out.size() < a.k() && (i < x.size() || j < y.size())) {
    if (j == y.size() || (i < x.size() && x[i] < y[j])) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j] < x[i]) {
      out.push_back(y[j++]);
    } else {
      out.push_back(x[i]);
      ++i;
      ++j;
    }
  }
  return Sketch(a.k(), std::move(out));
}

double threshold_rank(const Sketch &s, const RankAssignment &ranks) {
  if (s.empty()) throw std::invalid_argument("threshold of an empty sketch");
  if (s.full()) return ranks.value(s.rank_at(s.k() - 1));
  return (s.k() - 1) / (double)s.size();
}

double estimate_cardinality(const Sketch &s, const RankAssignment &ranks) {
  if (s.empty()) throw std::invalid_argument("estimate of an empty sketch");
  if (!s.full()) return (double)s.size();
  return (s.k() - 1) / threshold_rank(s, ranks);
}

}  // namespace fractality
