#include "fractality/setcover.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fractality {

namespace {

// Gain ordering shared by both solvers. A full merged sketch always beats an
// under-full one; within a class a smaller key means a larger estimated
// gain; final ties go to the smallest collection id.
struct Key {
  bool full = false;
  unsigned long long v = 0;
  int id = -1;
};

bool better(const Key &x, const Key &y) {
  if (x.full != y.full) return x.full;
  if (x.v != y.v) return x.v < y.v;
  return x.id < y.id;
}

int count_le(const std::vector<rank_t> &sorted, rank_t x) {
  return (int)(std::upper_bound(sorted.begin(), sorted.end(), x) -
               sorted.begin());
}

double safe_estimate(const Sketch &s, const RankAssignment &ra) {
  return s.empty() ? 0.0 : estimate_cardinality(s, ra);
}

bool contains(const std::vector<rank_t> &sorted, rank_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

CoverSelection select_greedily_naive(const SketchedFamily &fam,
                                     const SelectOptions &opt) {
  const int k = fam.k;
  const RankAssignment &ra = *fam.ranks;
  const int m = (int)fam.sketches.size();
  CoverSelection out;
  Sketch r(k);
  std::vector<char> done(m, 0);
  const double target =
      (1.0 - opt.eps / 2.0) * (double)fam.universe_size;
  int left = m;
  while (left > 0) {
    if (!opt.ignore_estimate_guard &&
        safe_estimate(r, ra) >= target)
      break;
    Key best;
    Sketch best_merged;
    for (int p = 0; p < m; ++p) {
      if (done[p]) continue;
      Sketch mg = merge_and_purify(r, fam.sketches[p]);
      Key key;
      key.id = p;
      key.full = mg.full();
      key.v = key.full
                  ? (unsigned long long)mg.rank_at(k - 1)
                  : (unsigned long long)(k - mg.size() + r.size());
      if (best.id < 0 || better(key, best)) {
        best = key;
        best_merged = std::move(mg);
      }
    }
    if (best.id < 0) break;
    bool zero = best.full
                    ? (r.full() && best.v == (unsigned long long)r.rank_at(k - 1))
                    : best.v == (unsigned long long)k;
    if (zero && opt.stop_on_saturation) break;
    done[best.id] = 1;
    --left;
    r = std::move(best_merged);
    out.selected.push_back(best.id);
    out.estimate_trace.push_back(safe_estimate(r, ra));
    if (opt.on_select && !opt.on_select(best.id)) break;
  }
  return out;
}

CoverSelection select_greedily_naive(const SketchedFamily &fam, double eps) {
  SelectOptions opt;
  opt.eps = eps;
  return select_greedily_naive(fam, opt);
}

namespace {

// Incremental solver state. A collection is U while its merge with S~_R is
// under-full, then A or B by which side owns the k-th smallest merged rank
// (a rank present in S~_R counts as the R side). Stored fields are kept
// exact at loop boundaries:
//   U: s = |S~_p|, d = |S~_p intersect S~_R|, base = k - s + d (the gain key)
//   A: a = |merged intersect S~_p|, b = |merged intersect S~_R|;
//      theta = a-th smallest of S~_p, so the key needs no storage
//   B: b as above; theta = b-th smallest of S~_R, self-updating as S~_R
//      moves, so a B collection costs nothing while it stays B;
//      phi = largest rank of S~_p below theta and outside S~_R, the value
//      whose crossing promotes the collection
// Glued means merged = S~_R (b = k): zero marginal gain forever.
struct PState {
  enum Type : unsigned char { kU, kA, kB, kGlued, kDone };
  Type type = kU;
  int s = 0;
  long long d = 0;
  long long base = 0;
  int a = 0;
  int b = 0;
  rank_t phi = 0;
  bool has_phi = false;
  std::uint64_t seq = 0;
};

using QaEntry = std::tuple<rank_t, int, std::uint64_t>;          // theta
using QbEntry = std::tuple<long long, int, std::uint64_t>;       // b or k+1+base
using TreeEntry = std::tuple<rank_t, int, std::uint64_t>;        // theta or phi

struct FastSolver {
  const SketchedFamily &fam;
  const SelectOptions &opt;
  int k;
  int m;
  CoverSelection out;

  std::vector<PState> st;
  Sketch rsk;
  std::vector<std::vector<int>> index;  // rank -> collections holding it

  std::priority_queue<QaEntry, std::vector<QaEntry>, std::greater<QaEntry>> qa;
  std::priority_queue<QbEntry, std::vector<QbEntry>, std::greater<QbEntry>> qb;
  // slot j watches the j-th smallest rank of S~_R; an entry fires once that
  // value drops strictly below its key
  std::vector<std::priority_queue<TreeEntry>> tree;
  std::priority_queue<QbEntry, std::vector<QbEntry>, std::greater<QbEntry>>
      transitions;  // under-full collections keyed by base

  FastSolver(const SketchedFamily &f, const SelectOptions &o)
      : fam(f), opt(o), k(f.k), m((int)f.sketches.size()), rsk(f.k) {}

  const std::vector<rank_t> &rs() const { return rsk.ranks(); }
  const std::vector<rank_t> &ps(int p) const {
    return fam.sketches[p].ranks();
  }
  rank_t theta_a(const PState &s, int p) const { return ps(p)[s.a - 1]; }
  rank_t theta_b(const PState &s) const { return rs()[s.b - 1]; }

  void push_state(int p) {
    PState &s = st[p];
    ++s.seq;
    if (s.type == PState::kU) {
      qb.push({(long long)k + 1 + s.base, p, s.seq});
      transitions.push({s.base, p, s.seq});
    } else if (s.type == PState::kA) {
      rank_t th = theta_a(s, p);
      qa.push({th, p, s.seq});
      tree[s.b + 1].push({th, p, s.seq});
    } else if (s.type == PState::kB) {
      qb.push({(long long)s.b, p, s.seq});
      tree[s.b].push({s.has_phi ? s.phi : 0, p, s.seq});
    }
  }

  // Largest rank of S~_p that is below bound and not in S~_R.
  void find_phi(int p, rank_t bound) {
    PState &s = st[p];
    const std::vector<rank_t> &pp = ps(p);
    int i = count_le(pp, bound) - 1;
    while (i >= 0 && (pp[i] == bound || contains(rs(), pp[i]))) --i;
    s.has_phi = i >= 0;
    s.phi = i >= 0 ? pp[i] : 0;
  }

  // Exact reclassification against the current S~_R: walk the two sorted
  // lists to the k-th distinct rank and read the side memberships off it.
  void reclassify(int p) {
    PState &s = st[p];
    const std::vector<rank_t> &pp = ps(p);
    const std::vector<rank_t> &rr = rs();
    std::size_t i = 0, j = 0;
    int distinct = 0;
    rank_t theta = 0;
    while (distinct < k) {
      if (j == rr.size() || (i < pp.size() && pp[i] < rr[j]))
        theta = pp[i++];
      else if (i == pp.size() || rr[j] < pp[i])
        theta = rr[j++];
      else {
        theta = pp[i];
        ++i;
        ++j;
      }
      ++distinct;
    }
    s.a = count_le(pp, theta);
    s.b = count_le(rr, theta);
    if (s.b == k) {
      s.type = PState::kGlued;
      ++s.seq;
      return;
    }
    if (contains(rr, theta)) {
      s.type = PState::kB;
      find_phi(p, theta);
    } else {
      s.type = PState::kA;
    }
    push_state(p);
  }

  void init() {
    st.resize(m);
    out.events.resize(m);
    tree.resize(k + 2);
    index.resize(fam.ranks->n);
    for (int p = 0; p < m; ++p) {
      const std::vector<rank_t> &pp = ps(p);
      for (rank_t x : pp) index[x].push_back(p);
      PState &s = st[p];
      s.s = (int)pp.size();
      if (s.s == k) {
        s.type = PState::kA;
        s.a = k;
        s.b = 0;
      } else {
        s.type = PState::kU;
        s.base = k - s.s;
      }
      push_state(p);
    }
  }

  // Type-3 batch: every rank of S~_p that just entered S~_R, grouped per
  // collection and judged against the pre-selection state.
  void phase1(const std::vector<rank_t> &delta,
              const std::vector<rank_t> &rs_old) {
    std::vector<std::pair<int, rank_t>> touched;
    for (rank_t x : delta)
      for (int p : index[x]) {
        PState::Type t = st[p].type;
        if (t == PState::kDone || t == PState::kGlued) continue;
        touched.push_back({p, x});
      }
    std::sort(touched.begin(), touched.end());
    for (std::size_t lo = 0; lo < touched.size();) {
      std::size_t hi = lo;
      int p = touched[lo].first;
      while (hi < touched.size() && touched[hi].first == p) ++hi;
      PState &s = st[p];
      out.events[p].type3 += (int)(hi - lo);
      if (s.type == PState::kU) {
        s.d += (long long)(hi - lo);
        s.base += (long long)(hi - lo);
        push_state(p);
      } else if (s.type == PState::kA) {
        rank_t theta = theta_a(s, p);
        int below = 0;
        bool hit = false;
        for (std::size_t t = lo; t < hi; ++t) {
          below += touched[t].second < theta;
          hit = hit || touched[t].second == theta;
        }
        if (below + hit > 0) {
          s.b += below;
          if (hit) {
            // the k-th rank now sits on both sides, which makes this a B
            ++s.b;
            if (s.b == k) {
              s.type = PState::kGlued;
              ++s.seq;
            } else {
              s.type = PState::kB;
              find_phi(p, theta);
              push_state(p);
            }
          } else {
            push_state(p);
          }
        }
      } else {  // kB
        rank_t theta = rs_old[s.b - 1];
        int below = 0;
        bool phi_hit = false;
        for (std::size_t t = lo; t < hi; ++t) {
          below += touched[t].second < theta;
          phi_hit = phi_hit || (s.has_phi && touched[t].second == s.phi);
        }
        if (below > 0 || phi_hit) {
          s.b += below;
          if (s.b == k) {
            s.type = PState::kGlued;
            ++s.seq;
          } else {
            if (phi_hit) find_phi(p, theta);
            push_state(p);
          }
        }
      }
      lo = hi;
    }
  }

  // An under-full collection reaches k merged entries silently once S~_R is
  // large enough; base never shrinks, so the heap top is an exact gate.
  void drain_transitions() {
    while (!transitions.empty() &&
           std::get<0>(transitions.top()) <= (long long)rs().size()) {
      const int p = std::get<1>(transitions.top());
      const std::uint64_t seq = std::get<2>(transitions.top());
      transitions.pop();
      PState &s = st[p];
      if (s.type != PState::kU || s.seq != seq) continue;
      if (s.base > (long long)rs().size()) continue;
      reclassify(p);
    }
  }

  void phase2(const std::vector<rank_t> &rs_old) {
    const std::vector<rank_t> &rr = rs();
    std::size_t first = 0;
    while (first < rs_old.size() && first < rr.size() &&
           rs_old[first] == rr[first])
      ++first;
    for (std::size_t j = first; j < rr.size(); ++j) {
      auto &heap = tree[j + 1];
      while (!heap.empty() && std::get<0>(heap.top()) > rr[j]) {
        const int p = std::get<1>(heap.top());
        const std::uint64_t seq = std::get<2>(heap.top());
        heap.pop();
        PState &s = st[p];
        if (s.seq != seq ||
            (s.type != PState::kA && s.type != PState::kB))
          continue;
        bool was_a = s.type == PState::kA;
        reclassify(p);
        if (was_a)
          ++out.events[p].type1;
        else
          ++out.events[p].type21;
      }
    }
  }

  // Cleans stale queue tops and returns the best candidate, or id -1.
  Key peek() {
    while (!qa.empty()) {
      const int p = std::get<1>(qa.top());
      if (st[p].seq == std::get<2>(qa.top()) && st[p].type == PState::kA)
        break;
      qa.pop();
    }
    while (!qb.empty()) {
      const int p = std::get<1>(qb.top());
      const PState &s = st[p];
      if (s.seq == std::get<2>(qb.top()) &&
          (s.type == PState::kB || s.type == PState::kU))
        break;
      qb.pop();
    }
    Key best;
    if (!qa.empty()) {
      best = {true, std::get<0>(qa.top()), std::get<1>(qa.top())};
    }
    if (!qb.empty()) {
      const int p = std::get<1>(qb.top());
      const PState &s = st[p];
      Key cand;
      if (s.type == PState::kB)
        cand = {true, theta_b(s), p};
      else
        cand = {false, (unsigned long long)s.base, p};
      if (best.id < 0 || better(cand, best)) best = cand;
    }
    return best;
  }

  bool zero_gain(const Key &key) const {
    if (!key.full) return key.v == (unsigned long long)k;
    return rsk.full() && key.v == (unsigned long long)rsk.rank_at(k - 1);
  }

  // Commits one selection and propagates all state updates. Returns false
  // when the caller asked to stop through on_select.
  bool commit(int p) {
    st[p].type = PState::kDone;
    ++st[p].seq;
    std::vector<rank_t> rs_old = rs();
    Sketch merged = merge_and_purify(rsk, fam.sketches[p]);
    std::vector<rank_t> delta;
    std::set_difference(merged.ranks().begin(), merged.ranks().end(),
                        rs_old.begin(), rs_old.end(),
                        std::back_inserter(delta));
    rsk = std::move(merged);
    out.selected.push_back(p);
    out.estimate_trace.push_back(safe_estimate(rsk, *fam.ranks));
    if (!delta.empty()) {
      phase1(delta, rs_old);
      drain_transitions();
      phase2(rs_old);
    }
    return !opt.on_select || opt.on_select(p);
  }

  CoverSelection run() {
    init();
    const double target =
        (1.0 - opt.eps / 2.0) * (double)fam.universe_size;
    int left = m;
    while (left > 0) {
      if (!opt.ignore_estimate_guard &&
          safe_estimate(rsk, *fam.ranks) >= target)
        break;
      Key best = peek();
      if (best.id < 0 || zero_gain(best)) {
        if (opt.stop_on_saturation) break;
        // zero-gain endgame: S~_R cannot move anymore, so the remaining
        // collections go in by id, exactly as the quadratic solver does
        for (int q = 0; q < m && left > 0; ++q) {
          if (st[q].type == PState::kDone) continue;
          --left;
          if (!commit(q)) break;
        }
        break;
      }
      --left;
      if (!commit(best.id)) break;
    }
    return std::move(out);
  }
};

}  // namespace

CoverSelection select_greedily_fast(const SketchedFamily &fam,
                                    const SelectOptions &opt) {
  FastSolver solver(fam, opt);
  return solver.run();
}

CoverSelection select_greedily_fast(const SketchedFamily &fam, double eps) {
  SelectOptions opt;
  opt.eps = eps;
  return select_greedily_fast(fam, opt);
}

}  // namespace fractality
