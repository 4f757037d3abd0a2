// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and compares library output
// against independent references.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fractality/boxcover.hpp"
#include "fractality/fractality.hpp"
#include "fractality/generators.hpp"
#include "fractality/graph.hpp"
#include "fractality/minhash.hpp"
#include "fractality/rng.hpp"
#include "fractality/setcover.hpp"
#include "oracles.hpp"

using namespace fractality;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string &detail) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char *f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// ---- criterion 1: generator sizes ----------------------------------------

void criterion1() {
  struct Row {
    const char *name;
    Graph g;
    V n;
    long long m;
  };
  const Row rows[] = {
      {"(2,2,4)-flower", gen_flower(2, 2, 4), 172, 256},
      {"(2,2,7)-flower", gen_flower(2, 2, 7), 10924, 16384},
      {"(1,2,10)-flower", gen_flower(1, 2, 10), 29526, 59049},
      {"(2,0,6)-shm", gen_shm(2, 0, 6), 12501, 12500},
      {"(2,1,6)-shm", gen_shm(2, 1, 6), 24885, 31104},
      {"(3,1,5)-shm", gen_shm(3, 1, 5), 14045, 16384},
      {"(2,1)-ba", gen_ba(2, 1, 0), 250, 497},
      {"(2,4)-ba", gen_ba(2, 4, 0), 2000, 3997},
  };
  int ok = 0;
  std::string bad;
  for (const Row &r : rows) {
    if (r.g.num_vertices() == r.n && r.g.num_edges() == r.m)
      ++ok;
    else
      bad += fmt(" %s got (%d,%lld)", r.name, r.g.num_vertices(),
                 r.g.num_edges());
  }
  report(1, ok == 8,
         fmt("generator sizes exact (%d/8)%s", ok, bad.c_str()));
}

// ---- criteria 2 and 5: solver equivalence and event bounds ---------------

struct FamilyFixture {
  RankAssignment ra;
  SketchedFamily fam;
};

void build_random_family(FamilyFixture &fx, V n, int k, std::uint64_t seed) {
  fx.ra = assign_ranks(n, derive_seed(seed, 1));
  fx.fam.ranks = &fx.ra;
  fx.fam.k = k;
  fx.fam.universe_size = n;
  fx.fam.sketches.clear();
  std::mt19937_64 rng(derive_seed(seed, 2));
  int sets = 2 + (int)next_below(rng, (std::uint64_t)(n / 2 + 3));
  std::vector<V> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (int s = 0; s < sets; ++s) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t size = next_below(rng, (std::uint64_t)n + 1);
    std::vector<V> items(pool.begin(), pool.begin() + size);
    fx.fam.sketches.push_back(sketch_from_items(items, fx.ra, k));
  }
}

int g_worst_family_event = 0;

void criterion2() {
  const int kGrid[] = {4, 8, 16};
  int match = 0;
  std::string bad;
  for (int i = 0; i < 200; ++i) {
    V n = 32 + (V)((i * 97) % 225);
    int k = kGrid[i % 3];
    double eps = (i % 2) ? 0.1 : 0.0;
    FamilyFixture fx;
    build_random_family(fx, n, k, derive_seed(4242, i));
    CoverSelection a = select_greedily_naive(fx.fam, eps);
    CoverSelection b = select_greedily_fast(fx.fam, eps);
    for (const EventCounts &e : b.events)
      g_worst_family_event = std::max(g_worst_family_event, e.total() - 3 * k);
    bool same = a.selected == b.selected &&
                a.estimate_trace == b.estimate_trace;
    if (same)
      ++match;
    else if (bad.empty())
      bad = fmt(" first mismatch at i=%d (n=%d k=%d eps=%.1f)", i, n, k, eps);
  }
  report(2, match == 200,
         fmt("fast greedy matches naive order and trace (%d/200)%s", match,
             bad.c_str()));
}

void criterion5() {
  bool family_ok = g_worst_family_event <= 0;
  bool cover_ok = true;
  bool exercised = false;
  std::string detail;
  Graph g = gen_flower(2, 2, 5);
  for (int k : {8, 16})
    for (int l : {1, 2}) {
      BoxCoverParams p;
      p.l = l;
      p.k = k;
      p.alpha = 0.01;
      p.seed = 3;
      CoverResult r = sketch_box_cover(g, p);
      for (const PassTrace &t : r.traces) {
        exercised = exercised || t.alpha_switched;
        if (t.max_events > 3 * k) {
          cover_ok = false;
          detail += fmt(" k=%d l=%d pass=%d events=%d", k, l, t.pass,
                        t.max_events);
        }
      }
    }
  report(5, family_ok && cover_ok && exercised,
         fmt("per-collection events within 3k (families%s, covers%s, sketch "
             "path %s)%s",
             family_ok ? " ok" : " over", cover_ok ? " ok" : " over",
             exercised ? "exercised" : "never reached", detail.c_str()));
}

// ---- criterion 3: sketch construction matches direct construction --------

void criterion3() {
  int checked = 0, equal = 0;
  for (int i = 0; i < 50; ++i) {
    V n = 20 + (V)((i * 91) % 281);
    long long m = n + (i % 3) * n;
    Graph g = oracle::random_graph(n, m, derive_seed(900, i), i % 2 == 0);
    RankAssignment ra = assign_ranks(n, derive_seed(901, i));
    for (int l = 1; l <= 3; ++l) {
      std::vector<Sketch> built = build_sketches(g, l, ra, 16, {});
      bool all = true;
      for (V v = 0; v < n; ++v)
        all = all && built[v] == sketch_from_items(oracle::ball(g, v, l), ra, 16);
      ++checked;
      if (all) ++equal;
    }
  }
  report(3, equal == checked,
         fmt("neighborhood sketches match per-vertex construction (%d/%d)",
             equal, checked));
}

// ---- criterion 4: estimator accuracy -------------------------------------

void criterion4() {
  const V n = 20000;
  const long long true_card = 10000;
  const int k = 128;
  std::vector<V> items(true_card);
  std::iota(items.begin(), items.end(), 0);
  std::vector<double> est;
  est.reserve(1000);
  for (int s = 0; s < 1000; ++s) {
    RankAssignment ra = assign_ranks(n, derive_seed(7000, s));
    est.push_back(estimate_cardinality(sketch_from_items(items, ra, k), ra));
  }
  double mean = std::accumulate(est.begin(), est.end(), 0.0) / est.size();
  double var = 0;
  for (double e : est) var += (e - mean) * (e - mean);
  var /= est.size() - 1;
  double sd = std::sqrt(var);
  double se = sd / std::sqrt((double)est.size());
  double cv = sd / true_card;
  double cv_bound = 1.2 / std::sqrt(k - 2.0);
  bool ok = std::abs(mean - true_card) <= 3 * se && cv <= cv_bound;
  report(4, ok,
         fmt("cardinality estimator: mean=%.1f (|bias|=%.1f, 3se=%.1f), "
             "cv=%.4f <= %.4f",
             mean, std::abs(mean - true_card), 3 * se, cv, cv_bound));
}

// ---- criterion 6: approximation quality at eps = 0 -----------------------

void criterion6() {
  int within_bound = 0, within_15 = 0;
  for (int i = 0; i < 100; ++i) {
    Graph g = (i % 5 == 0)
                  ? gen_flower(2, 2, 2)
                  : oracle::random_graph(6 + (V)((i * 13) % 15),
                                         8 + (i * 29) % 30,
                                         derive_seed(600, i), true);
    int l = 1 + i % 2;
    std::size_t opt = brute_force_box_cover(g, l).size();
    BoxCoverParams p;
    p.l = l;
    p.seed = derive_seed(601, i);
    CoverResult r = sketch_box_cover(g, p);
    double ratio = (double)r.centers.size() / (double)opt;
    double bound = 1 + 2 * std::log((double)g.num_vertices());
    bool covers =
        coverage_size(g, r.centers, l) == g.num_vertices();
    if (covers && ratio <= bound + 1e-9) ++within_bound;
    if (covers && ratio <= 1.5 + 1e-9) ++within_15;
  }
  report(6, within_bound == 100 && within_15 >= 95,
         fmt("cover quality vs exhaustive optimum: bound %d/100, ratio<=1.5 "
             "%d/100",
             within_bound, within_15));
}

// ---- criteria 7 and 8: verdicts and run-to-run spread --------------------

void criterion7() {
  struct Model {
    const char *name;
    Graph g;
    bool fractal;
  };
  Model models[] = {
      {"(2,2,7)-flower", gen_flower(2, 2, 7), true},
      {"(2,3,6)-flower", gen_flower(2, 3, 6), true},
      {"(2,0,6)-shm", gen_shm(2, 0, 6), true},
      {"(1,2,10)-flower", gen_flower(1, 2, 10), false},
      {"(2,1,6)-shm", gen_shm(2, 1, 6), false},
      {"(2,7)-ba", gen_ba(2, 7, 1), false},
  };
  int ok = 0;
  std::string scores;
  for (Model &m : models) {
    SweepParams p;
    p.threads = 8;
    BoxCountCurve curve = sweep(m.g, p);
    FitReport fit = fit_curve(curve, 0);
    if (fit.fractal == m.fractal) ++ok;
    scores += fmt(" %s=%+.2f%s", m.name, fit.score,
                  fit.fractal == m.fractal ? "" : "(wrong)");
  }
  report(7, ok == 6, fmt("verdicts on known models (%d/6):%s", ok,
                         scores.c_str()));
}

void criterion8() {
  Graph g = gen_flower(3, 3, 5);
  SweepParams p;
  p.threads = 8;
  p.smooth = false;
  BoxCountCurve curve = sweep(g, p);
  double worst = 0;
  int worst_l = 0;
  for (const CurveSample &s : curve.samples) {
    double cv = s.b_std / s.b_mean;
    if (cv > worst) {
      worst = cv;
      worst_l = s.l;
    }
  }
  report(8, worst <= 0.25,
         fmt("(3,3,5)-flower run-to-run cv: worst %.4f at l=%d (limit 0.25, "
             "%zu scales)",
             worst, worst_l, curve.samples.size()));
}

// ---- criterion 9: scaling ladder through the installed binary ------------

void criterion9() {
  const char *bin = std::getenv("FRACTALITY_BIN");
  if (!bin) {
    report(9, false, "FRACTALITY_BIN not set; cannot run the bench ladder");
    return;
  }
  std::string cmd = std::string(bin) +
                    " bench --family ba --c 2 --range 4:9 --l 2 --repeats 3 "
                    "--seed 1 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    report(9, false, "failed to launch bench");
    return;
  }
  std::vector<double> secs, rss;
  std::vector<long long> ns;
  char line[512];
  while (std::fgets(line, sizeof line, pipe)) {
    if (line[0] == '#') continue;
    std::istringstream in(line);
    std::string family, spec;
    long long n, m;
    double s, r;
    if (in >> family >> spec >> n >> m >> s >> r) {
      ns.push_back(n);
      secs.push_back(s);
      rss.push_back(r);
    }
  }
  int status = pclose(pipe);
  if (status != 0 || secs.size() != 6) {
    report(9, false,
           fmt("bench ladder incomplete (%zu rungs, exit %d)", secs.size(),
               status));
    return;
  }
  // sub-10ms rungs are clamped so timer noise cannot dominate the ratio
  const double floor_s = 0.01;
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i + 1 < secs.size(); ++i) {
    double tr = std::max(secs[i + 1], floor_s) / std::max(secs[i], floor_s);
    double mr = rss[i + 1] / rss[i];
    detail += fmt(" t%.0f:%.2fx/%.2fx", std::log2(ns[i + 1] / 125.0), tr, mr);
    if (tr > 6.0 || mr > 3.0) ok = false;
  }
  report(9, ok, fmt("ba ladder growth per doubling (time/mem):%s", detail.c_str()));
}

// ---- criterion 10: incremental coverage bookkeeping ----------------------

std::vector<int> multi_source_dist(const Graph &g, const std::vector<V> &src,
                                   int cap) {
  std::vector<int> dist(g.num_vertices(), kFar);
  std::queue<V> q;
  for (V s : src)
    if (dist[s] != 0) {
      dist[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    V u = q.front();
    q.pop();
    if (dist[u] == cap) continue;
    for (V w : g.neighbors(u))
      if (dist[w] == kFar) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

void criterion10() {
  int checked = 0, equal = 0;
  for (int i = 0; i < 50; ++i) {
    V n = 10 + (V)((i * 37) % 141);
    Graph g = oracle::random_graph(n, n + (i % 4) * n, derive_seed(520, i),
                                   i % 2 == 0);
    int l = 1 + i % 3;
    std::mt19937_64 rng(derive_seed(521, i));
    std::vector<V> centers;
    std::vector<int> delta(n, kFar);
    long long covered = 0;
    for (int step = 0; step < 6; ++step) {
      V v = (V)next_below(rng, (std::uint64_t)n);
      centers.push_back(v);
      covered += exact_coverage_update(g, delta, v, l);
      std::vector<int> want = multi_source_dist(g, centers, l);
      long long want_covered = 0;
      bool same = true;
      for (V u = 0; u < n; ++u) {
        same = same && delta[u] == want[u];
        if (want[u] != kFar) ++want_covered;
      }
      ++checked;
      if (same && covered == want_covered) ++equal;
    }
  }
  report(10, equal == checked,
         fmt("incremental coverage equals multi-source references (%d/%d)",
             equal, checked));
}

template <typename F>
void guarded(int idx, F &&f) {
  try {
    f();
  } catch (const std::exception &e) {
    report(idx, false, fmt("exception: %s", e.what()));
  }
}

}  // namespace

int main() {
  guarded(1, criterion1);
  guarded(2, criterion2);
  guarded(3, criterion3);
  guarded(4, criterion4);
  guarded(5, criterion5);
  guarded(6, criterion6);
  guarded(7, criterion7);
  guarded(8, criterion8);
  guarded(9, criterion9);
  guarded(10, criterion10);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
