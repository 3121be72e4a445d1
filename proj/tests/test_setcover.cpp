#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "sparsenav/instances.hpp"
#include "sparsenav/setcover.hpp"
#include "test_util.hpp"

using namespace sparsenav;

namespace {

// Instance used throughout: greedy picks {0,1,2} then {3,4}.
std::vector<std::vector<int>> greedy_example() {
  return {{0, 1, 2}, {3, 4}, {2, 3}, {4}};
}

SetCoverSpec spec_of(int n, std::vector<std::vector<int>> sets) {
  SetCoverSpec s;
  s.n_elements = n;
  s.sets = std::move(sets);
  return s;
}

SetCoverSpec random_coverable_spec(int n, int m, std::mt19937_64& rng) {
  SetCoverSpec s;
  s.n_elements = n;
  std::bernoulli_distribution member(0.35);
  std::uniform_int_distribution<int> set_pick(0, m - 1);
  s.sets.assign(m, {});
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < n; ++x)
      if (member(rng)) s.sets[i].push_back(x);
  for (int x = 0; x < n; ++x) {
    bool hit = false;
    for (const auto& set : s.sets)
      if (std::binary_search(set.begin(), set.end(), x)) hit = true;
    if (!hit) {
      auto& set = s.sets[set_pick(rng)];
      set.insert(std::lower_bound(set.begin(), set.end(), x), x);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("AliveSet support restriction and deletion") {
  AliveSet a(4);
  REQUIRE(a.size() == 4);
  CHECK(a.erase(0));
  CHECK(a.erase(2));
  CHECK_FALSE(a.erase(0));  // already dead
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    int x = a.sample(rng);
    REQUIRE((x == 1 || x == 3));
  }
  CHECK(a.erase(1));
  CHECK(a.erase(3));
  CHECK(a.empty());
  CHECK_THROWS_AS(a.sample(rng), std::logic_error);
  CHECK_THROWS_AS(AliveSet(0), std::invalid_argument);
}

TEST_CASE("AliveSet from_members and consistency under random ops") {
  AliveSet a = AliveSet::from_members(10, {1, 4, 7});
  CHECK(a.size() == 3);
  CHECK(a.members() == std::vector<int>{1, 4, 7});
  CHECK(a.check_consistency());

  AliveSet b(37);
  std::set<int> model;
  for (int x = 0; x < 37; ++x) model.insert(x);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pick(0, 36);
  for (int op = 0; op < 5000; ++op) {
    int x = pick(rng);
    bool did = b.erase(x);
    REQUIRE(did == (model.erase(x) == 1));
    REQUIRE(b.size() == static_cast<int>(model.size()));
    REQUIRE(b.check_consistency());
    if (!model.empty()) REQUIRE(model.count(b.sample(rng)) == 1);
    if (model.empty()) break;
  }
}

TEST_CASE("greedy_cover examples") {
  CHECK(greedy_cover(5, greedy_example()) == std::vector<int>{0, 1});
  CHECK(greedy_cover(4, {{0, 1, 2, 3}}) == std::vector<int>{0});
  CHECK(greedy_cover(3, {{0}, {1}, {2}}) == std::vector<int>{0, 1, 2});
  CHECK_THROWS_WITH(greedy_cover(3, {{0}, {1}}),
                    Catch::Matchers::ContainsSubstring("no cover"));
}

TEST_CASE("greedy_cover approximation bound on random instances") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 3 + trial % 10;
    int m = 2 + trial % 11;
    SetCoverSpec spec = random_coverable_spec(n, m, rng);
    auto cover = greedy_cover(n, spec.sets);
    std::vector<char> seen(n, 0);
    for (int i : cover)
      for (int x : spec.sets[i]) seen[x] = 1;
    REQUIRE(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }));
    int opt = brute_force_min_cover(n, spec.sets);
    REQUIRE(cover.size() <= (std::log(double(n)) + 1.0) * opt);
  }
}

TEST_CASE("brute_force_min_cover examples") {
  CHECK(brute_force_min_cover(5, greedy_example()) == 2);
  CHECK(brute_force_min_cover(5, {{0}, {1}, {2}, {3}, {4}}) == 5);
  CHECK(brute_force_min_cover(4, {{0, 1, 2, 3}, {1}}) == 1);
  CHECK_THROWS_AS(brute_force_min_cover(30, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_min_cover(3, {{0}, {1}}), std::invalid_argument);
}

TEST_CASE("find_heavy_set returns the sole universal set") {
  SetCoverSpec spec = spec_of(6, {{0, 1, 2, 3, 4, 5}});
  MembershipView view = make_view(spec);
  AliveSet alive(6);
  std::mt19937_64 rng(3);
  auto s = find_heavy_set(alive, view, 1, 6, rng);
  REQUIRE(s.has_value());
  CHECK(*s == 0);
  CHECK_THROWS_AS(find_heavy_set(alive, view, 0, 6, rng), std::invalid_argument);
}

TEST_CASE("find_heavy_set guarantees on a planted instance") {
  SetCoverSpec spec = planted_setcover(100, 100, 4, 21);
  MembershipView view = make_view(spec);
  int khat = 8;
  int fails = 0, light = 0, returns = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    AliveSet alive(100);
    std::mt19937_64 rng(seed);
    auto s = find_heavy_set(alive, view, khat, 100, rng);
    if (!s) {
      ++fails;
      continue;
    }
    ++returns;
    int inter = 0;
    for (int x : spec.sets[*s])
      if (alive.alive(x)) ++inter;
    if (inter < alive.size() / (8 * khat)) ++light;
  }
  CHECK(fails <= 6);  // 10% slack at this small trial count
  if (returns > 0) CHECK(light <= returns / 10);
}

TEST_CASE("fast_set_cover basics") {
  SECTION("single covering set") {
    SetCoverSpec spec = spec_of(5, {{0, 1, 2, 3, 4}});
    MembershipView view = make_view(spec);
    std::mt19937_64 rng(5);
    Cover c = fast_set_cover(5, view, rng);
    CHECK(c.sets == std::vector<int>{0});
    CHECK(c.membership_queries > 0);
  }
  SECTION("valid covers with bounded size over many seeds") {
    SetCoverSpec spec = spec_of(5, greedy_example());
    MembershipView view = make_view(spec);
    double bound = 2.0 * (std::log(5.0) + 1.0) * 2.0;  // slack times OPT=2
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::mt19937_64 rng(seed);
      Cover c = fast_set_cover(5, view, rng);
      std::vector<char> seen(5, 0);
      for (int i : c.sets)
        for (int x : spec.sets[i]) seen[x] = 1;
      REQUIRE(std::all_of(seen.begin(), seen.end(), [](char v) { return v != 0; }));
      REQUIRE(c.sets.size() <= bound);
    }
  }
  SECTION("uncoverable oracle trips the safety valve") {
    MembershipView view(3, 2, [](int, int) { return false; });
    std::mt19937_64 rng(0);
    CHECK_THROWS_WITH(fast_set_cover(3, view, rng),
                      Catch::Matchers::ContainsSubstring("uncoverable"));
  }
}

TEST_CASE("membership query counter") {
  SetCoverSpec spec = spec_of(4, {{0, 1}, {2, 3}});
  MembershipView view = make_view(spec);
  CHECK(view.query_count() == 0);
  CHECK(view.contains(0, 1));
  CHECK_FALSE(view.contains(0, 2));
  CHECK(view.query_count() == 2);
  view.reset_query_count();
  CHECK(view.query_count() == 0);
}

TEST_CASE("harmonic balancing inequality on random nonincreasing sequences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> val(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    int len = 1 + trial % 40;
    std::vector<double> a(len);
    for (auto& v : a) v = val(rng);
    std::sort(a.rbegin(), a.rend());
    double sum = 0, hl = 0, best = 0;
    for (int l = 1; l <= len; ++l) {
      sum += a[l - 1];
      hl += 1.0 / l;
      best = std::max(best, l * a[l - 1]);
    }
    REQUIRE(best >= sum / hl - 1e-9);
  }
}

TEST_CASE("sampled size testing separates heavy sets from light sets") {
  // Universe of 1000 with a heavy set (100 elements) and a light set (6).
  // T uniform samples with threshold T/20 should accept the heavy set and
  // reject the light one almost always.
  int N = 1000, T = 480, threshold = T / 20;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick(0, N - 1);
  int heavy_fail = 0, light_fail = 0;
  int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    int heavy_hits = 0, light_hits = 0;
    for (int t = 0; t < T; ++t) {
      int x = pick(rng);
      if (x < 100) ++heavy_hits;
      if (x >= 100 && x < 106) ++light_hits;
    }
    if (heavy_hits < threshold) ++heavy_fail;
    if (light_hits >= threshold) ++light_fail;
  }
  // Chernoff-style failure rates: well below 5% each.
  CHECK(heavy_fail <= trials / 20);
  CHECK(light_fail <= trials / 20);
}
