#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "sparsenav/instances.hpp"
#include "sparsenav/navgraph.hpp"
#include "test_util.hpp"

using namespace sparsenav;

namespace {

NavGraph complete_digraph(int n) {
  NavGraph g(n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t) g.add_edge(s, t);
  return g;
}

NavGraph random_graph(int n, double p, std::mt19937_64& rng) {
  NavGraph g(n);
  std::bernoulli_distribution flip(p);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && flip(rng)) g.add_edge(s, t);
  return g;
}

}  // namespace

TEST_CASE("NavGraph edge bookkeeping") {
  NavGraph g(4);
  g.add_edge(0, 3);
  g.add_edge(0, 1);
  g.add_edge(0, 3);  // duplicate ignored
  CHECK(g.out(0) == std::vector<int>{1, 3});
  CHECK(g.has_edge(0, 3));
  CHECK_FALSE(g.has_edge(3, 0));
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(NavGraph(0), std::invalid_argument);
}

TEST_CASE("verify_naive basics") {
  Metric u = uniform_metric(3);
  SECTION("complete digraph is 1-navigable on any metric") {
    CHECK(verify_naive(complete_digraph(3), u, 1.0).empty());
  }
  SECTION("empty graph violates all ordered pairs") {
    NavGraph g(3);
    auto v = verify_naive(g, u, 1.0);
    REQUIRE(v.size() == 6);
    CHECK(v == std::vector<Violation>{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  }
  SECTION("path plus shortcut reference graph is 1-navigable") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
      auto inst = perturbed_path(12, seed);
      CHECK(verify_naive(perturbed_path_reference_graph(inst), inst.metric, 1.0).empty());
    }
  }
  SECTION("alpha below one rejected") {
    CHECK_THROWS_AS(verify_naive(complete_digraph(3), u, 0.5), std::invalid_argument);
  }
  SECTION("size mismatch rejected") {
    CHECK_THROWS_AS(verify_naive(complete_digraph(4), u, 1.0), std::invalid_argument);
  }
}

TEST_CASE("degree_stats") {
  NavGraph empty(5);
  CHECK(degree_stats(empty) == std::pair<int, std::size_t>{0, 0});
  CHECK(degree_stats(complete_digraph(4)) == std::pair<int, std::size_t>{3, 12});
  auto [maxdeg, edges] = degree_stats(binary_tree_reference_graph(16));
  CHECK(maxdeg == 5);  // log2(16) + 1
  (void)edges;
}

TEST_CASE("violations grow with alpha and shrink with edges") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5 + trial % 8;
    Metric m = testutil::random_metric(n, 1000 + trial);
    NavGraph g = random_graph(n, 0.3, rng);

    auto v1 = verify_naive(g, m, 1.0);
    auto v2 = verify_naive(g, m, 1.5);
    auto v3 = verify_naive(g, m, 2.5);
    REQUIRE(std::includes(v2.begin(), v2.end(), v1.begin(), v1.end()));
    REQUIRE(std::includes(v3.begin(), v3.end(), v2.begin(), v2.end()));

    // Adding an edge never creates a violation.
    NavGraph g2 = g;
    std::uniform_int_distribution<int> pick(0, n - 1);
    int s = pick(rng), t = pick(rng);
    if (s != t) {
      g2.add_edge(s, t);
      auto before = verify_naive(g, m, 1.5);
      auto after = verify_naive(g2, m, 1.5);
      REQUIRE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    }
  }
}

TEST_CASE("only the complete digraph is navigable at n=2") {
  Metric m(2, {0.0, 1.0, 1.0, 0.0});
  for (int mask = 0; mask < 4; ++mask) {
    NavGraph g(2);
    if (mask & 1) g.add_edge(0, 1);
    if (mask & 2) g.add_edge(1, 0);
    bool navigable = verify_naive(g, m, 1.0).empty();
    CHECK(navigable == (mask == 3));
  }
}
