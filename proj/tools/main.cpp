#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fractality/boxcover.hpp"
#include "fractality/fractality.hpp"
#include "fractality/generators.hpp"
#include "fractality/graph.hpp"
#include "fractality/rng.hpp"

using namespace fractality;

namespace {

constexpr int kUsageError = 1;
constexpr int kInputError = 2;
constexpr int kSolverError = 3;

// One "# key<TAB>value" line per setting, so every run is reproducible from
// its own output.
void echo_config(
    const std::vector<std::pair<std::string, std::string>> &entries) {
  for (const auto &[key, value] : entries)
    std::cout << "# " << key << '\t' << value << '\n';
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

Graph build_family(const std::string &family, const std::vector<long long> &a,
                   std::uint64_t seed) {
  if (family == "flower") {
    if (a.size() != 3)
      throw std::invalid_argument("flower takes parameters u v g");
    return gen_flower((int)a[0], (int)a[1], (int)a[2]);
  }
  if (family == "shm") {
    if (a.size() != 3)
      throw std::invalid_argument("shm takes parameters c e g");
    return gen_shm((int)a[0], (int)a[1], (int)a[2]);
  }
  if (family == "ba") {
    if (a.size() == 3) return gen_ba((int)a[0], (int)a[1], (std::uint64_t)a[2]);
    if (a.size() != 2) throw std::invalid_argument("ba takes parameters c t");
    return gen_ba((int)a[0], (int)a[1], seed);
  }
  throw std::invalid_argument("unknown model family: " + family);
}

Graph graph_from_model(const std::string &spec, std::uint64_t seed) {
  std::istringstream in(spec);
  std::string family;
  if (!(in >> family)) throw std::invalid_argument("empty model spec");
  std::vector<long long> args;
  long long x = 0;
  while (in >> x) args.push_back(x);
  if (!in.eof()) throw std::invalid_argument("model parameters must be integers");
  return build_family(family, args, seed);
}

// Loads the graph from exactly one of --input / --model. Returns 0 and
// fills g on success, otherwise the exit code to use.
int load_graph(const std::string &input, const std::string &model,
               std::uint64_t seed, Graph &g) {
  if (input.empty() == model.empty()) {
    std::cerr << "exactly one of --input and --model is required\n";
    return kUsageError;
  }
  try {
    if (!model.empty()) {
      g = graph_from_model(model, seed);
    } else {
      std::ifstream in(input);
      if (!in) {
        std::cerr << "cannot open " << input << '\n';
        return kInputError;
      }
      g = load_edge_list(in);
    }
  } catch (const ParseError &e) {
    std::cerr << input << ':' << e.line() << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument &e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }
  return 0;
}

void write_graph(const Graph &g, const std::string &banner, std::ostream &out) {
  out << "# " << banner << '\n';
  out << "# n " << g.num_vertices() << " m " << g.num_edges() << '\n';
  write_edge_list(g, out);
}

struct GenerateArgs {
  std::string family;
  std::vector<long long> params;
  std::uint64_t seed = 0;
  std::string output;
};

int run_generate(const GenerateArgs &a) {
  if (a.family != "flower" && a.family != "shm" && a.family != "ba") {
    std::cerr << "unknown family: " << a.family
              << " (expected flower, shm, or ba)\n";
    return kUsageError;
  }
  Graph g;
  try {
    g = build_family(a.family, a.params, a.seed);
  } catch (const std::invalid_argument &e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }
  std::ostringstream banner;
  banner << a.family;
  for (long long p : a.params) banner << ' ' << p;
  if (a.family == "ba" && a.params.size() == 2) banner << " seed=" << a.seed;
  if (a.output.empty()) {
    write_graph(g, banner.str(), std::cout);
  } else {
    std::ofstream out(a.output);
    if (!out) {
      std::cerr << "cannot write " << a.output << '\n';
      return kInputError;
    }
    write_graph(g, banner.str(), out);
    std::cout << "n\t" << g.num_vertices() << '\n';
    std::cout << "m\t" << g.num_edges() << '\n';
  }
  return 0;
}

struct CoverArgs {
  std::string input, model, algorithm = "sketch";
  BoxCoverParams p;
};

int run_cover(const CoverArgs &a) {
  Graph g;
  if (int code = load_graph(a.input, a.model, a.p.seed, g)) return code;
  echo_config({{"source", a.input.empty() ? a.model : a.input},
               {"algorithm", a.algorithm},
               {"l", std::to_string(a.p.l)},
               {"k", std::to_string(a.p.k)},
               {"alpha", fmt_double(a.p.alpha)},
               {"eps", fmt_double(a.p.eps)},
               {"max_passes", std::to_string(a.p.max_passes)},
               {"rng", "mt19937_64"},
               {"seed", std::to_string(a.p.seed)}});
  try {
    if (a.algorithm == "brute") {
      auto t0 = std::chrono::steady_clock::now();
      std::vector<V> centers = brute_force_box_cover(g, a.p.l);
      auto t1 = std::chrono::steady_clock::now();
      std::cout << "b\t" << centers.size() << '\n';
      std::cout << "covered\t" << g.num_vertices() << '\n';
      std::cout << "n\t" << g.num_vertices() << '\n';
      std::cout << "seconds\t"
                << std::chrono::duration<double>(t1 - t0).count() << '\n';
      return 0;
    }
    CoverResult r;
    if (a.algorithm == "exact-greedy") {
      std::vector<std::vector<V>> balls((std::size_t)g.num_vertices());
      for (V v = 0; v < g.num_vertices(); ++v)
        balls[v] = neighborhood(g, v, a.p.l);
      r = explicit_greedy_cover(balls, g, a.p);
    } else {
      r = sketch_box_cover(g, a.p);
    }
    std::cout << "b\t" << r.centers.size() << '\n';
    std::cout << "covered\t" << r.covered << '\n';
    std::cout << "n\t" << g.num_vertices() << '\n';
    std::cout << "passes\t" << r.passes << '\n';
    std::cout << "fallback\t" << (r.fallback_used ? 1 : 0) << '\n';
    std::cout << "seconds\t" << r.wall_seconds << '\n';
  } catch (const CoverFailure &e) {
    std::cerr << e.what() << " (covered " << e.partial.covered << " of "
              << g.num_vertices() << ")\n";
    return kSolverError;
  } catch (const std::invalid_argument &e) {
    std::cerr << e.what() << '\n';
    return kInputError;
  }
  return 0;
}

struct SweepFitArgs {
  std::string input, model;
  SweepParams p;
  int exclude_prefix = -1;  // -1: 0 for models, 3 for measured graphs
};

int run_sweepfit(const SweepFitArgs &a) {
  Graph g;
  if (int code = load_graph(a.input, a.model, a.p.cover.seed, g)) return code;
  int exclude = a.exclude_prefix >= 0 ? a.exclude_prefix
                                      : (a.model.empty() ? 3 : 0);
  echo_config({{"source", a.input.empty() ? a.model : a.input},
               {"lmax", std::to_string(a.p.l_max)},
               {"runs", std::to_string(a.p.runs)},
               {"threads", std::to_string(a.p.threads)},
               {"smooth", a.p.smooth ? "1" : "0"},
               {"exclude_prefix", std::to_string(exclude)},
               {"k", std::to_string(a.p.cover.k)},
               {"alpha", fmt_double(a.p.cover.alpha)},
               {"eps", fmt_double(a.p.cover.eps)},
               {"max_passes", std::to_string(a.p.cover.max_passes)},
               {"rng", "mt19937_64"},
               {"seed", std::to_string(a.p.cover.seed)}});
  BoxCountCurve curve = sweep(g, a.p);
  std::cout << "# l\tb_mean\tb_std\truns\n";
  for (const CurveSample &s : curve.samples)
    std::cout << s.l << '\t' << s.b_mean << '\t' << s.b_std << '\t' << s.runs
              << '\n';
  FitReport rep;
  try {
    rep = fit_curve(curve, exclude);
  } catch (const std::invalid_argument &e) {
    std::cerr << e.what() << '\n';
    return kSolverError;
  }
  std::cout << "power_a\t" << rep.power_a << '\n';
  std::cout << "power_d\t" << rep.power_d << '\n';
  std::cout << "residual_power\t" << rep.residual_power << '\n';
  std::cout << "exp_b0\t" << rep.exp_b0 << '\n';
  std::cout << "exp_c\t" << rep.exp_c << '\n';
  std::cout << "residual_exp\t" << rep.residual_exp << '\n';
  std::cout << "points_used\t" << rep.points_used << '\n';
  std::cout << "score\t" << rep.score << '\n';
  std::cout << "verdict\t" << (rep.fractal ? "fractal" : "not-fractal")
            << '\n';
  return 0;
}

struct BenchArgs {
  std::string family = "flower";
  int u = 2, v = 2, c = 2, e = 0;
  std::string range = "1:4";
  int repeats = 3;
  BoxCoverParams p;
};

struct BenchMsg {
  long long n = 0, m = 0;
  double secs = 0.0, rss_kb = 0.0;
};

// Builds one rung and covers it in a forked child, so ru_maxrss reflects
// that rung alone; the parent reads the measurement over a pipe.
int measure_rung(const BenchArgs &a, int rung, BenchMsg &msg) {
  int fds[2];
  if (pipe(fds) != 0) return -1;
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    return -1;
  }
  if (pid == 0) {
    close(fds[0]);
    int code = 9;
    try {
      auto t0 = std::chrono::steady_clock::now();
      Graph g;
      if (a.family == "flower")
        g = gen_flower(a.u, a.v, rung);
      else if (a.family == "shm")
        g = gen_shm(a.c, a.e, rung);
      else
        g = gen_ba(a.c, rung, a.p.seed);
      CoverResult r = sketch_box_cover(g, a.p);
      auto t1 = std::chrono::steady_clock::now();
      struct rusage ru;
      getrusage(RUSAGE_SELF, &ru);
      BenchMsg out;
      out.n = g.num_vertices();
      out.m = g.num_edges();
      out.secs = std::chrono::duration<double>(t1 - t0).count();
      out.rss_kb = (double)ru.ru_maxrss;
      (void)r;
      if (write(fds[1], &out, sizeof out) == (ssize_t)sizeof out) code = 0;
    } catch (...) {
    }
    close(fds[1]);
    _exit(code);
  }
  close(fds[1]);
  ssize_t got = read(fds[0], &msg, sizeof msg);
  close(fds[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  bool ok = got == (ssize_t)sizeof msg && WIFEXITED(status) &&
            WEXITSTATUS(status) == 0;
  return ok ? 0 : -1;
}

int run_bench(const BenchArgs &a) {
  if (a.family != "flower" && a.family != "shm" && a.family != "ba") {
    std::cerr << "unknown family: " << a.family << '\n';
    return kUsageError;
  }
  int lo = 0, hi = 0;
  char sep = 0;
  std::istringstream rng_in(a.range);
  if (!(rng_in >> lo >> sep >> hi) || sep != ':' || lo > hi || !rng_in.eof()) {
    std::cerr << "--range expects A:B with A <= B\n";
    return kUsageError;
  }
  echo_config({{"family", a.family},
               {"range", a.range},
               {"l", std::to_string(a.p.l)},
               {"k", std::to_string(a.p.k)},
               {"alpha", fmt_double(a.p.alpha)},
               {"repeats", std::to_string(a.repeats)},
               {"rng", "mt19937_64"},
               {"seed", std::to_string(a.p.seed)}});
  std::cout << "# family\tspec\tn\tm\tseconds\trss_kb\n";
  for (int rung = lo; rung <= hi; ++rung) {
    BenchMsg best;
    bool have = false;
    for (int rep = 0; rep < std::max(a.repeats, 1); ++rep) {
      BenchMsg msg;
      if (measure_rung(a, rung, msg) != 0) {
        std::cerr << "measurement failed on rung " << rung << '\n';
        return kSolverError;
      }
      if (!have || msg.secs < best.secs) best.secs = msg.secs;
      if (!have || msg.rss_kb < best.rss_kb) best.rss_kb = msg.rss_kb;
      best.n = msg.n;
      best.m = msg.m;
      have = true;
    }
    std::ostringstream spec;
    if (a.family == "flower")
      spec << "u=" << a.u << ",v=" << a.v << ",g=" << rung;
    else if (a.family == "shm")
      spec << "c=" << a.c << ",e=" << a.e << ",g=" << rung;
    else
      spec << "c=" << a.c << ",t=" << rung;
    std::cout << a.family << ' ' << spec.str() << ' ' << best.n << ' '
              << best.m << ' ' << best.secs << ' ' << best.rss_kb << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"box-cover fractality toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App *cgen = app.add_subcommand("generate", "emit a model graph");
  cgen->add_option("family", gen.family, "flower | shm | ba")->required();
  cgen->add_option("params", gen.params, "family parameters")->expected(2, 3);
  cgen->add_option("--seed", gen.seed, "generator seed (ba)");
  cgen->add_option("-o,--output", gen.output, "write the edge list here");

  CoverArgs cov;
  CLI::App *ccov = app.add_subcommand("cover", "cover one graph with boxes");
  ccov->add_option("--input", cov.input, "edge list file");
  ccov->add_option("--model", cov.model, "model spec, e.g. \"flower 2 2 4\"");
  ccov->add_option("--l", cov.p.l, "box radius")->capture_default_str();
  ccov->add_option("--k", cov.p.k, "sketch size")->capture_default_str();
  ccov->add_option("--alpha", cov.p.alpha, "sketch switch budget")
      ->capture_default_str();
  ccov->add_option("--eps", cov.p.eps, "coverage tolerance")
      ->capture_default_str();
  ccov->add_option("--max-passes", cov.p.max_passes, "pass budget")
      ->capture_default_str();
  ccov->add_option("--seed", cov.p.seed, "rng seed");
  ccov->add_option("--algorithm", cov.algorithm, "sketch | exact-greedy | brute")
      ->check(CLI::IsMember({"sketch", "exact-greedy", "brute"}));

  SweepFitArgs swf;
  CLI::App *cswf =
      app.add_subcommand("sweepfit", "box-count curve and model fit");
  cswf->add_option("--input", swf.input, "edge list file");
  cswf->add_option("--model", swf.model, "model spec");
  cswf->add_option("--lmax", swf.p.l_max, "largest radius")
      ->capture_default_str();
  cswf->add_option("--runs", swf.p.runs, "repetitions per radius")
      ->capture_default_str();
  cswf->add_option("--threads", swf.p.threads, "parallel runs")
      ->capture_default_str();
  cswf->add_flag_callback("--no-smooth", [&] { swf.p.smooth = false; },
                          "keep raw means");
  cswf->add_option("--exclude-prefix", swf.exclude_prefix,
                   "fit skips this many small radii (default 0 for models, "
                   "3 for measured graphs)");
  cswf->add_option("--k", swf.p.cover.k, "sketch size")->capture_default_str();
  cswf->add_option("--alpha", swf.p.cover.alpha, "sketch switch budget")
      ->capture_default_str();
  cswf->add_option("--eps", swf.p.cover.eps, "coverage tolerance")
      ->capture_default_str();
  cswf->add_option("--max-passes", swf.p.cover.max_passes, "pass budget")
      ->capture_default_str();
  cswf->add_option("--seed", swf.p.cover.seed, "rng seed");

  BenchArgs ben;
  CLI::App *cben = app.add_subcommand("bench", "scaling ladder");
  cben->add_option("--family", ben.family, "flower | shm | ba")
      ->capture_default_str();
  cben->add_option("--u", ben.u, "flower u")->capture_default_str();
  cben->add_option("--v", ben.v, "flower v")->capture_default_str();
  cben->add_option("--c", ben.c, "shm/ba c")->capture_default_str();
  cben->add_option("--e", ben.e, "shm e")->capture_default_str();
  cben->add_option("--range", ben.range, "generation range A:B")
      ->capture_default_str();
  cben->add_option("--l", ben.p.l, "box radius")->capture_default_str();
  cben->add_option("--k", ben.p.k, "sketch size")->capture_default_str();
  cben->add_option("--alpha", ben.p.alpha, "sketch switch budget")
      ->capture_default_str();
  cben->add_option("--repeats", ben.repeats, "best-of count")
      ->capture_default_str();
  cben->add_option("--seed", ben.p.seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (cgen->parsed()) return run_generate(gen);
  if (ccov->parsed()) return run_cover(cov);
  if (cswf->parsed()) return run_sweepfit(swf);
  return run_bench(ben);
}
