#include "fractality/fractality.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "fractality/rng.hpp"

namespace fractality {

namespace {

long long boxes_for(const Graph &g, const BoxCoverParams &base, int l,
                    std::uint64_t seed) {
  BoxCoverParams p = base;
  p.l = l;
  p.seed = seed;
  return (long long)sketch_box_cover(g, p).centers.size();
}

struct Fit2 {
  double p0 = 0.0;  // scale parameter
  double p1 = 0.0;  // shape parameter
  double sse = 0.0;
};

// Least squares for y ~ model(p0, p1, l), seeded by ordinary least squares
// in log space and polished by damped Gauss-Newton steps that are only ever
// accepted when the raw-space residual improves.
template <typename Model, typename Jacobian>
Fit2 refine(const std::vector<double> &ls, const std::vector<double> &ys,
            double p0, double p1, Model model, Jacobian jac) {
  const std::size_t n = ls.size();
  auto sse_of = [&](double a, double b) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = model(a, b, ls[i]) - ys[i];
      s += d * d;
    }
    return s;
  };
  Fit2 best{p0, p1, sse_of(p0, p1)};
  double lambda = 1e-6;
  for (int iter = 0; iter < 60; ++iter) {
    double jtj00 = 0, jtj01 = 0, jtj11 = 0, jtr0 = 0, jtr1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto [j0, j1] = jac(best.p0, best.p1, ls[i]);
      double r = ys[i] - model(best.p0, best.p1, ls[i]);
      jtj00 += j0 * j0;
      jtj01 += j0 * j1;
      jtj11 += j1 * j1;
      jtr0 += j0 * r;
      jtr1 += j1 * r;
    }
    bool stepped = false;
    for (int tries = 0; tries < 8 && !stepped; ++tries) {
      double a00 = jtj00 + lambda, a11 = jtj11 + lambda;
      double det = a00 * a11 - jtj01 * jtj01;
      if (det == 0 || !std::isfinite(det)) break;
      double d0 = (a11 * jtr0 - jtj01 * jtr1) / det;
      double d1 = (a00 * jtr1 - jtj01 * jtr0) / det;
      double c0 = best.p0 + d0, c1 = best.p1 + d1;
      double s = sse_of(c0, c1);
      if (std::isfinite(s) && s < best.sse) {
        best = {c0, c1, s};
        lambda = std::max(lambda / 4, 1e-12);
        stepped = true;
      } else {
        lambda *= 10;
      }
    }
    if (!stepped) break;
  }
  return best;
}

// Slope and intercept of y ~ inter + slope * x.
std::pair<double, double> ols(const std::vector<double> &xs,
                              const std::vector<double> &ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = (double)xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double inter = (sy - slope * sx) / n;
  return {slope, inter};
}

}  // namespace

BoxCountCurve sweep(const Graph &g, const SweepParams &p) {
  BoxCountCurve curve;
  curve.params = p;
  std::vector<long long> counts((std::size_t)std::max(p.runs, 0));
  for (int l = 1; l <= p.l_max; ++l) {
    auto t0 = std::chrono::steady_clock::now();
#ifdef _OPENMP
#pragma omp parallel for num_threads(std::max(p.threads, 1)) \
    schedule(dynamic) if (p.threads > 1)
#endif
    for (int run = 0; run < p.runs; ++run) {
      std::uint64_t seed =
          derive_seed(p.cover.seed, (std::uint64_t)l, (std::uint64_t)run);
      counts[run] = boxes_for(g, p.cover, l, seed);
    }
    auto t1 = std::chrono::steady_clock::now();

    CurveSample s;
    s.l = l;
    s.runs = p.runs;
    double sum = 0;
    for (int run = 0; run < p.runs; ++run) sum += (double)counts[run];
    s.b_mean = sum / p.runs;
    if (p.runs > 1) {
      double dev = 0;
      for (int run = 0; run < p.runs; ++run) {
        double d = (double)counts[run] - s.b_mean;
        dev += d * d;
      }
      s.b_std = std::sqrt(dev / (p.runs - 1));
    }
    curve.samples.push_back(s);
    curve.seconds_per_l.push_back(
        std::chrono::duration<double>(t1 - t0).count());
    if (s.b_mean == 1.0) break;
  }
  if (p.smooth)
    for (std::size_t i = 1; i < curve.samples.size(); ++i)
      curve.samples[i].b_mean =
          std::min(curve.samples[i].b_mean, curve.samples[i - 1].b_mean);
  return curve;
}

FitReport fit_curve(const BoxCountCurve &curve, int exclude_prefix) {
  FitReport rep;
  rep.exclude_prefix = exclude_prefix;
  std::size_t end = curve.samples.size();
  // Trailing samples at b = 1 sit past the scaling regime: one box already
  // covers the graph, so they carry no information about the decay shape.
  while (end > 0 && curve.samples[end - 1].b_mean <= 1.0) --end;
  std::vector<double> ls, ys;
  for (std::size_t i = (std::size_t)std::max(exclude_prefix, 0); i < end;
       ++i) {
    ls.push_back((double)curve.samples[i].l);
    ys.push_back(curve.samples[i].b_mean);
  }
  rep.points_used = (int)ls.size();
  if (rep.points_used < 4)
    throw std::invalid_argument("need at least 4 curve points to fit");
  if (*std::max_element(ys.begin(), ys.end()) ==
      *std::min_element(ys.begin(), ys.end()))
    throw std::invalid_argument("flat curve cannot be classified");

  std::vector<double> log_l(ls.size()), log_y(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    log_l[i] = std::log(ls[i]);
    log_y[i] = std::log(ys[i]);
  }

  double log_sse_power = 0.0, log_sse_exp = 0.0;
  {
    auto [slope, inter] = ols(log_l, log_y);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      double d = log_y[i] - (inter + slope * log_l[i]);
      log_sse_power += d * d;
    }
    Fit2 f = refine(
        ls, ys, std::exp(inter), -slope,
        [](double a, double d, double l) { return a * std::pow(l, -d); },
        [](double a, double d, double l) {
          double base = std::pow(l, -d);
          return std::pair<double, double>{base, -a * std::log(l) * base};
        });
    rep.power_a = f.p0;
    rep.power_d = f.p1;
    rep.residual_power = f.sse;
  }
  {
    auto [slope, inter] = ols(ls, log_y);
    for (std::size_t i = 0; i < ls.size(); ++i) {
      double d = log_y[i] - (inter + slope * ls[i]);
      log_sse_exp += d * d;
    }
    Fit2 f = refine(
        ls, ys, std::exp(inter), -slope,
        [](double b0, double c, double l) { return b0 * std::exp(-c * l); },
        [](double b0, double c, double l) {
          double base = std::exp(-c * l);
          return std::pair<double, double>{base, -b0 * l * base};
        });
    rep.exp_b0 = f.p0;
    rep.exp_c = f.p1;
    rep.residual_exp = f.sse;
  }

  // The verdict compares the two linearized fits where each is a straight
  // line, so the ratio weighs every decade of the curve equally instead of
  // letting the largest counts dominate.
  if (log_sse_power == 0.0 && log_sse_exp == 0.0) {
    rep.r_fit = 1.0;
    rep.score = 0.0;
  } else if (log_sse_exp == 0.0) {
    rep.r_fit = std::numeric_limits<double>::infinity();
    rep.score = -std::numeric_limits<double>::infinity();
  } else {
    rep.r_fit = log_sse_power / log_sse_exp;
    rep.score = rep.r_fit == 0.0 ? std::numeric_limits<double>::infinity()
                                 : -std::log10(rep.r_fit);
  }
  rep.fractal = rep.score > 0.0;
  return rep;
}

}  // namespace fractality
