#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fractality/boxcover.hpp"
#include "fractality/graph.hpp"

namespace fractality {

struct CurveSample {
  int l = 0;
  double b_mean = 0.0;  // mean box count over the runs
  double b_std = 0.0;   // sample standard deviation (0 if runs = 1)
  int runs = 0;
};

struct SweepParams {
  BoxCoverParams cover;  // cover.l is overwritten per sweep point
  int l_max = 32;
  int runs = 10;
  int threads = 1;
  bool smooth = true;  // enforce monotone non-increasing means
};

struct BoxCountCurve {
  std::vector<CurveSample> samples;      // l = 1 .. (early stop at b = 1)
  std::vector<double> seconds_per_l;
  SweepParams params;
};

struct FitReport {
  // b(l) ~ a * l^(-d)
  double power_a = 0.0;
  double power_d = 0.0;
  double residual_power = 0.0;
  // b(l) ~ b0 * exp(-c * l)
  double exp_b0 = 0.0;
  double exp_c = 0.0;
  double residual_exp = 0.0;
  double r_fit = 0.0;   // SSE ratio of the linearized fits, power over exp
  double score = 0.0;   // -log10(r_fit); positive favors the power law
  bool fractal = false;
  int exclude_prefix = 0;
  int points_used = 0;
};

// Runs the box-cover pipeline for l = 1 .. l_max with `runs` repetitions
// per l under derived seeds, stopping early once the mean box count
// reaches 1. Runs of one sweep point execute in parallel when threads > 1.
BoxCountCurve sweep(const Graph &g, const SweepParams &p);

// Fits both model families to the mean curve, skipping the first
// exclude_prefix samples and any trailing samples already down to one box.
// Reported parameters and residuals come from least squares on the raw
// (unlogged) means; the verdict (r_fit, score, fractal) compares the
// linearized fits, a log-log line versus a semi-log line, so that small
// counts in the tail weigh as much as large counts at the head. Throws
// std::invalid_argument given fewer than 4 usable points or a flat curve.
FitReport fit_curve(const BoxCountCurve &curve, int exclude_prefix);

}  // namespace fractality
