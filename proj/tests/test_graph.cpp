#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fractality/graph.hpp"
#include "oracles.hpp"

using namespace fractality;

TEST_CASE("triangle edge list") {
  std::istringstream in("0 1\n1 2\n2 0\n");
  Graph g = load_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
}

TEST_CASE("self-loops and duplicates are dropped, ids compacted") {
  std::istringstream in("5 5\n5 7\n7 5\n");
  Graph g = load_edge_list(in);
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.neighbors(0)[0] == 1);
}

TEST_CASE("ids are compacted in first-appearance order") {
  std::istringstream in("7 3\n3 1\n");
  Graph g = load_edge_list(in);
  REQUIRE(g.num_vertices() == 3);
  // 7 -> 0, 3 -> 1, 1 -> 2
  CHECK(g.degree(1) == 2);
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(2)[0] == 1);
}

TEST_CASE("comments and blank lines are skipped") {
  std::istringstream in("# header\n\n0 1\n  \n# tail\n1 2\n");
  Graph g = load_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
}

TEST_CASE("malformed lines report their line number") {
  std::istringstream in("0 1\nx 2\n");
  try {
    load_edge_list(in);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.line() == 2);
  }

  std::istringstream missing("0 1\n3\n");
  CHECK_THROWS_AS(load_edge_list(missing), ParseError);
  std::istringstream extra("0 1 2\n");
  CHECK_THROWS_AS(load_edge_list(extra), ParseError);
}

TEST_CASE("empty input is an error") {
  std::istringstream in("");
  CHECK_THROWS_AS(load_edge_list(in), ParseError);
  std::istringstream comments_only("# nothing\n\n");
  CHECK_THROWS_AS(load_edge_list(comments_only), ParseError);
}

TEST_CASE("from_edges normalizes loops, duplicates, direction") {
  std::vector<Edge> es{{0, 1}, {1, 0}, {2, 2}, {1, 2}, {1, 2}};
  Graph g = Graph::from_edges(3, es);
  CHECK(g.num_edges() == 2);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  long long deg_sum = 0;
  for (V v = 0; v < g.num_vertices(); ++v) deg_sum += g.degree(v);
  CHECK(deg_sum == 2 * g.num_edges());
}

TEST_CASE("adjacency is sorted and symmetric") {
  Graph g = oracle::random_graph(60, 150, 11);
  for (V v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    for (V u : nb) {
      auto un = g.neighbors(u);
      CHECK(std::binary_search(un.begin(), un.end(), v));
    }
  }
}

TEST_CASE("round trip through the canonical serialization") {
  Graph g = oracle::random_graph(40, 90, 3);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  Graph h = load_edge_list(in);
  CHECK(g == h);
}

TEST_CASE("canonical serialization is u < v ascending") {
  Graph g = oracle::random_graph(25, 50, 5);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream in(out.str());
  std::vector<Edge> pairs;
  long long a = 0, b = 0;
  while (in >> a >> b) {
    CHECK(a < b);
    pairs.push_back({(V)a, (V)b});
  }
  CHECK(std::is_sorted(pairs.begin(), pairs.end()));
  CHECK((long long)pairs.size() == g.num_edges());
}

TEST_CASE("neighborhood base cases") {
  std::istringstream in("0 1\n1 2\n");
  Graph path = load_edge_list(in);
  CHECK(neighborhood(path, 0, 0) == std::vector<V>{0});
  CHECK(neighborhood(path, 0, 1) == std::vector<V>{0, 1});
  CHECK(neighborhood(path, 1, 1) == std::vector<V>{0, 1, 2});
}

TEST_CASE("neighborhood matches the BFS reference") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = oracle::random_graph(120, 260, seed);
    for (V v = 0; v < g.num_vertices(); v += 7)
      for (int d = 0; d <= 4; ++d) CHECK(neighborhood(g, v, d) == oracle::ball(g, v, d));
  }
}

TEST_CASE("neighborhoods grow with the radius up to the whole graph") {
  Graph g = oracle::random_graph(50, 80, 21);
  for (V v = 0; v < g.num_vertices(); v += 5) {
    std::vector<V> prev = neighborhood(g, v, 0);
    for (int d = 1; d <= 10; ++d) {
      std::vector<V> cur = neighborhood(g, v, d);
      CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
    // connected fixture, diameter far below 50
    CHECK((V)neighborhood(g, v, 49).size() == g.num_vertices());
  }
}

TEST_CASE("coverage_size extremes") {
  Graph g = oracle::random_graph(30, 60, 8);
  std::vector<V> all(g.num_vertices());
  for (V v = 0; v < g.num_vertices(); ++v) all[v] = v;
  CHECK(coverage_size(g, all, 0) == g.num_vertices());
  CHECK(coverage_size(g, all, 3) == g.num_vertices());
  CHECK(coverage_size(g, {}, 2) == 0);
}

TEST_CASE("coverage_size equals the union of neighborhoods") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = oracle::random_graph(80, 150, seed + 40);
    std::mt19937_64 gen(seed);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<V> centers;
      for (int i = 0; i < 5; ++i) centers.push_back((V)(gen() % g.num_vertices()));
      int l = 1 + (int)(gen() % 3);
      std::set<V> uni;
      for (V c : centers)
        for (V x : neighborhood(g, c, l)) uni.insert(x);
      CHECK(coverage_size(g, centers, l) == (long long)uni.size());
      CHECK(coverage_size(g, centers, l) == oracle::coverage(g, centers, l));
    }
  }
}
