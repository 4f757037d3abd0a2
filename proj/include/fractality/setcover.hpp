#pragma once

#include <functional>
#include <vector>

#include "fractality/minhash.hpp"

namespace fractality {

// A set family given only through the min-hash sketches of its members, all
// built under one RankAssignment and one k. universe_size is n, the number
// of elements (= number of collections in the problem setting).
struct SketchedFamily {
  const RankAssignment *ranks = nullptr;
  int k = 0;
  long long universe_size = 0;
  std::vector<Sketch> sketches;  // collection id p -> S~_p
};

struct EventCounts {
  int type1 = 0;    // type-A collection whose gain key changed
  int type21 = 0;   // type-B collection promoted to type A
  int type3 = 0;    // an element of S~_p entered S~_R
  int total() const { return type1 + type21 + type3; }
};

struct CoverSelection {
  std::vector<int> selected;           // ordered R
  std::vector<double> estimate_trace;  // C~(R) after each selection
  std::vector<EventCounts> events;     // per collection; filled by fast only
};

// Hooks used by the box-cover driver; the plain set-cover entry points below
// run with defaults (estimate-threshold termination, no callback).
struct SelectOptions {
  double eps = 0.0;
  // Called after each selection; return false to stop (exact-coverage
  // termination of the practical pipeline).
  std::function<bool(int)> on_select;
  // Stop before selecting a collection with zero estimated marginal gain
  // (estimate saturation: C~(R) = C~(P)); the plain greedy instead keeps
  // selecting until the loop guard or exhaustion.
  bool stop_on_saturation = false;
  // Replace the C~(R) >= (1 - eps/2) n loop guard entirely (used when the
  // caller terminates through on_select).
  bool ignore_estimate_guard = false;
};

// Algorithm: iteratively add the collection maximizing the merged-sketch
// estimate until R = P or C~(R) >= (1 - eps/2) n. Ties go to the smallest
// collection id. O(n^2 k).
CoverSelection select_greedily_naive(const SketchedFamily &fam, double eps);

// Same output, computed through the event machinery (queues, trees, inverted
// index) in O(nk log n). Event counters are returned for verification.
CoverSelection select_greedily_fast(const SketchedFamily &fam, double eps);

CoverSelection select_greedily_naive(const SketchedFamily &fam,
                                     const SelectOptions &opt);
CoverSelection select_greedily_fast(const SketchedFamily &fam,
                                    const SelectOptions &opt);

}  // namespace fractality
