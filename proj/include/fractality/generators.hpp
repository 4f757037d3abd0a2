#pragma once

#include <cstdint>

#include "fractality/graph.hpp"

namespace fractality {

// (u, v)-flower after g generations: generation 1 is a cycle of length
// u + v; each generation replaces every edge by a u-path and a v-path
// between its endpoints. Requires u >= 1, v >= u, u + v >= 3, g >= 1.
Graph gen_flower(int u, int v, int g);

// Song-Havlin-Makse network after g generations: generation 1 is a star of
// one hub and 4 leaves; each generation attaches c * deg(x) new leaves to
// every vertex x, then replaces every old edge by a bridge between fresh
// leaves of its endpoints, keeping the old edge iff e = 1. Requires c >= 1,
// e in {0, 1}, g >= 1.
Graph gen_shm(int c, int e, int g);

// Barabasi-Albert graph with attachment degree c and n = 125 * 2^t
// vertices, grown from a (c+1)-clique; each new vertex picks c distinct
// degree-proportional targets. Requires c >= 1, t >= 0.
Graph gen_ba(int c, int t, std::uint64_t seed);

}  // namespace fractality
