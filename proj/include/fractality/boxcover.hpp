#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fractality/graph.hpp"
#include "fractality/minhash.hpp"
#include "fractality/setcover.hpp"

namespace fractality {

// delta[u] is the distance from u to its nearest selected center, capped at
// the radius; kFar marks vertices no center has reached.
inline constexpr int kFar = std::numeric_limits<int>::max();

struct BoxCoverParams {
  int l = 1;             // radius: boxes are closed l-neighborhoods
  int k = 128;           // sketch size
  double alpha = 1.0;    // sketch-building switches to bottom-k once the
                         // total entry count exceeds alpha * n * k
  double eps = 0.0;      // slack of the estimate-based loop guard
  std::uint64_t seed = 0;
  int max_passes = 10;   // multi-pass budget before the eps = 0 fallback
};

struct PassTrace {
  int pass = 0;
  int centers_added = 0;
  long long covered_after = 0;  // exact, from the running delta array
  bool alpha_switched = false;  // sketch building left k = infinity mode
  int max_events = 0;           // max per-collection event total this pass
};

struct CoverResult {
  std::vector<V> centers;
  long long covered = 0;     // |union of boxes|, exact
  int passes = 0;
  bool fallback_used = false;  // eps = 0 cleanup pass ran
  std::vector<PassTrace> traces;
  long long build_edge_traversals = 0;  // sketch-building work telemetry
  double wall_seconds = 0.0;
};

// Builds X_v ~ bottom-k sketch of { ranks of N_l(v) intersected with active }
// for every vertex, by l rounds of rank propagation in increasing rank order.
// active[v] = 0 excludes v from seeding (its rank enters no sketch) but v
// still relays ranks. active must have size n, or be empty meaning all
// active. If edge_traversals is non-null the number of (edge, round) relax
// attempts is added to it.
std::vector<Sketch> build_sketches(const Graph &g, int l,
                                   const RankAssignment &ranks, int k,
                                   const std::vector<char> &active,
                                   long long *edge_traversals = nullptr);

// Lowers delta along a BFS from v of depth l, pruning at vertices already as
// close to an earlier center. Returns the number of entries changed from
// kFar, i.e. the exact gain in |N_l(R)| from selecting v.
long long exact_coverage_update(const Graph &g, std::vector<int> &delta, V v,
                                int l);

// Raised when max_passes run out before the coverage target (eps > 0 only;
// with eps = 0 the fallback pass guarantees success).
class CoverFailure : public std::runtime_error {
 public:
  CoverFailure(std::string what, CoverResult partial)
      : std::runtime_error(std::move(what)), partial(std::move(partial)) {}
  CoverResult partial;
};

// The full pipeline: multi-pass sketch build + greedy selection with exact
// coverage tracking, then an eps = 0 fallback pass if uncovered vertices
// remain. Centers are returned in selection order.
CoverResult sketch_box_cover(const Graph &g, const BoxCoverParams &p);

// Plain lazy greedy on exact per-vertex neighbor sets, the non-sketch
// counterpart of sketch_box_cover with the same termination and tie rules.
// neighbor_sets[v] must be N_l(v), ascending.
CoverResult explicit_greedy_cover(
    const std::vector<std::vector<V>> &neighbor_sets, const Graph &g,
    const BoxCoverParams &p);

// Exact minimum box cover by branch and bound; refuses n > 25.
std::vector<V> brute_force_box_cover(const Graph &g, int l);

}  // namespace fractality
