#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsenav/metric.hpp"
#include "sparsenav/navgraph.hpp"
#include "sparsenav/setcover.hpp"

namespace sparsenav {

struct QueryCounter {
  std::uint64_t count = 0;
  void add(std::uint64_t k = 1) { count += k; }
};

// Membership test for the covering set of edge (s,u): is the constraint
// toward t satisfied by u? Costs two distance queries.
inline bool z_contains(const Metric& m, double alpha, int s, int u, int t,
                       QueryCounter* qc = nullptr) {
  if (qc) qc->add(2);
  return m(u, t) < m(s, t) / alpha;
}

struct BuildResult {
  NavGraph graph;
  std::uint64_t distance_queries = 0;
};

// Per-source greedy covering rule: repeatedly link to the nearest candidate
// whose constraint is still uncovered, then prune everything the new edge
// covers. Ties in the distance sort break toward the lower index.
inline BuildResult slow_diskann(const Metric& m, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("slow_diskann: alpha must be >= 1");
  int n = m.size();
  QueryCounter qc;
  NavGraph g(n);
  for (int s = 0; s < n; ++s) {
    std::vector<int> order;
    order.reserve(n - 1);
    for (int t = 0; t < n; ++t)
      if (t != s) order.push_back(t);
    qc.add(n - 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double da = m(s, a), db = m(s, b);
      return da != db ? da < db : a < b;
    });
    std::vector<char> pruned(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (pruned[i]) continue;
      int u = order[i];
      g.add_edge(s, u);
      pruned[i] = 1;
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        if (pruned[j]) continue;
        int t = order[j];
        if (z_contains(m, alpha, s, u, t, &qc)) pruned[j] = 1;
      }
    }
  }
  return {std::move(g), qc.count};
}

// Set-cover reduction with the explicit greedy solver: materializes every
// covering set Z_alpha(s,u) per source and runs Johnson's greedy on it.
inline BuildResult greedy_nav(const Metric& m, double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("greedy_nav: alpha must be >= 1");
  int n = m.size();
  QueryCounter qc;
  NavGraph g(n);
  for (int s = 0; s < n; ++s) {
    // Candidate u and target t both map to idx = (v < s ? v : v-1).
    std::vector<std::vector<int>> sets(n - 1);
    for (int u = 0; u < n; ++u) {
      if (u == s) continue;
      int ui = u < s ? u : u - 1;
      for (int t = 0; t < n; ++t) {
        if (t == s) continue;
        if (z_contains(m, alpha, s, u, t, &qc))
          sets[ui].push_back(t < s ? t : t - 1);
      }
    }
    for (int ui : greedy_cover(n - 1, sets)) g.add_edge(s, ui < s ? ui : ui + 1);
  }
  return {std::move(g), qc.count};
}

// Membership-query set cover per source; per-source generators are derived
// from the seed xor the source index.
inline BuildResult fast_nav(const Metric& m, double alpha, std::uint64_t seed) {
  if (alpha < 1.0) throw std::invalid_argument("fast_nav: alpha must be >= 1");
  int n = m.size();
  QueryCounter qc;
  NavGraph g(n);
  for (int s = 0; s < n; ++s) {
    MembershipView view(n - 1, n - 1, [&m, &qc, alpha, s](int ui, int ti) {
      int u = ui < s ? ui : ui + 1;
      int t = ti < s ? ti : ti + 1;
      return z_contains(m, alpha, s, u, t, &qc);
    });
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(s));
    Cover cover = fast_set_cover(n - 1, view, rng);
    for (int ui : cover.sets) g.add_edge(s, ui < s ? ui : ui + 1);
  }
  return {std::move(g), qc.count};
}

// Row-major bit-packed n x n Boolean matrix; padding bits are kept zero.
class BitMatrix {
 public:
  explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64),
                              bits_(static_cast<std::size_t>(n) * words_, 0) {}

  int size() const { return n_; }

  bool get(int r, int c) const {
    return (bits_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
  }

  void set(int r, int c) {
    bits_[static_cast<std::size_t>(r) * words_ + c / 64] |= 1ull << (c % 64);
  }

  static BitMatrix identity(int n) {
    BitMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  bool operator==(const BitMatrix&) const = default;

  friend BitMatrix bool_matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("bool_matmul: dimension mismatch");
    int n = a.n_, w = a.words_;
    BitMatrix c(n);
    for (int r = 0; r < n; ++r) {
      const std::uint64_t* arow = &a.bits_[static_cast<std::size_t>(r) * w];
      std::uint64_t* crow = &c.bits_[static_cast<std::size_t>(r) * w];
      for (int wi = 0; wi < w; ++wi) {
        std::uint64_t word = arow[wi];
        while (word) {
          int v = wi * 64 + std::countr_zero(word);
          word &= word - 1;
          const std::uint64_t* brow = &b.bits_[static_cast<std::size_t>(v) * w];
          for (int k = 0; k < w; ++k) crow[k] |= brow[k];
        }
      }
    }
    return c;
  }

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

inline BitMatrix adjacency_matrix(const NavGraph& g) {
  BitMatrix a(g.size());
  for (int s = 0; s < g.size(); ++s)
    for (int t : g.out(s)) a.set(s, t);
  return a;
}

// Batched navigability check over the rounded metric: one Boolean product
// per distance level. Output matches verify_naive on the rounded metric
// pair-for-pair; returned as per-source sorted target lists.
inline std::vector<std::vector<int>> verify_nav_batched(const DiscretizedMetric& dm,
                                                        const NavGraph& g,
                                                        double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("verify_nav_batched: alpha must be >= 1");
  if (dm.size() != g.size())
    throw std::invalid_argument("verify_nav_batched: size mismatch");
  int n = dm.size();
  BitMatrix a = adjacency_matrix(g);
  int lo = dm.min_level(), hi = dm.max_level();
  std::vector<BitMatrix> c;
  c.reserve(hi - lo + 1);
  for (int lvl = lo; lvl <= hi; ++lvl) {
    BitMatrix b(n);
    double bound = dm.power(lvl) / alpha;
    for (int u = 0; u < n; ++u)
      for (int t = 0; t < n; ++t)
        if (dm.rounded(u, t) < bound) b.set(u, t);
    c.push_back(bool_matmul(a, b));
  }
  std::vector<std::vector<int>> uncovered(n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      if (!c[dm.level(s, t) - lo].get(s, t)) uncovered[s].push_back(t);
    }
  return uncovered;
}

// Bicriteria construction: discretize, then grow all out-neighborhoods in
// parallel rounds of uniform sampling from the per-source uncovered sets,
// recomputed each round by one batched verification at alpha*(1+eps).
// Budgets double once a source has gone 120*log_{16/15} n rounds without
// emptying. The result is alpha-navigable on the original metric.
inline BuildResult build_nav(const Metric& m, double alpha, double eps,
                             std::uint64_t seed) {
  if (alpha < 1.0) throw std::invalid_argument("build_nav: alpha must be >= 1");
  int n = m.size();
  DiscretizedMetric dm(m, eps);
  NavGraph g(n);
  std::vector<std::int64_t> budget(n, 1);
  std::vector<std::int64_t> counter(n, 0);
  double counter_cap = 120.0 * std::log(double(n)) / std::log(16.0 / 15.0);
  std::int64_t round_cap =
      10 * static_cast<std::int64_t>(std::ceil(counter_cap * std::log2(double(n)) + 1));
  std::vector<std::mt19937_64> rng;
  rng.reserve(n);
  for (int s = 0; s < n; ++s) rng.emplace_back(seed ^ static_cast<std::uint64_t>(s));

  std::vector<std::vector<int>> uncovered(n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (t != s) uncovered[s].push_back(t);

  auto all_empty = [&] {
    for (const auto& u : uncovered)
      if (!u.empty()) return false;
    return true;
  };

  std::int64_t rounds = 0;
  while (!all_empty()) {
    if (++rounds > round_cap)
      throw std::runtime_error("build_nav: round cap exceeded after " +
                               std::to_string(rounds - 1) + " rounds");
    for (int s = 0; s < n; ++s) {
      if (uncovered[s].empty()) continue;
      AliveSet alive = AliveSet::from_members(n, uncovered[s]);
      for (std::int64_t i = 0; i < budget[s]; ++i) g.add_edge(s, alive.sample(rng[s]));
    }
    auto fresh = verify_nav_batched(dm, g, alpha * (1.0 + eps));
    for (int s = 0; s < n; ++s) {
      if (fresh[s].empty()) continue;
      // Check-then-increment, exactly in this order.
      if (counter[s] >= counter_cap) {
        budget[s] *= 2;
        counter[s] = 0;
      } else {
        ++counter[s];
      }
    }
    uncovered = std::move(fresh);
  }
  auto violations = verify_naive(g, m, alpha);
  if (!violations.empty())
    throw std::logic_error("build_nav: output failed final verification");
  // The metric is read once in full during discretization.
  return {std::move(g), static_cast<std::uint64_t>(n) * (n - 1)};
}

// Exact per-source minimum out-degrees by exhaustive subset search; the
// navigability constraints decompose independently per source.
inline std::vector<int> brute_force_min_degrees(const Metric& m, double alpha) {
  int n = m.size();
  if (n > 12) throw std::invalid_argument("brute_force_min_degrees: n too large");
  std::vector<int> degrees(n, 0);
  for (int s = 0; s < n; ++s) {
    std::vector<std::vector<int>> sets(n - 1);
    for (int u = 0; u < n; ++u) {
      if (u == s) continue;
      int ui = u < s ? u : u - 1;
      for (int t = 0; t < n; ++t)
        if (t != s && z_contains(m, alpha, s, u, t))
          sets[ui].push_back(t < s ? t : t - 1);
    }
    degrees[s] = brute_force_min_cover(n - 1, sets);
  }
  return degrees;
}

// Benchmark record for one build invocation.
struct BuildReport {
  std::string algorithm;
  double alpha = 1.0;
  double eps = 0.0;
  std::size_t edge_count = 0;
  int max_out_degree = 0;
  std::uint64_t distance_query_count = 0;
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

struct BudgetExhausted {};

}  // namespace detail

// Builder whose distance-query budget is hard-capped: it runs the
// membership-query construction and returns whatever partial graph exists
// when the budget runs out. Used to demonstrate that sub-quadratic query
// budgets miss the planted shortcut of the perturbed path instances.
inline NavGraph budget_capped_nav(const Metric& m, double alpha,
                                  std::uint64_t budget, std::uint64_t seed) {
  int n = m.size();
  NavGraph g(n);
  std::uint64_t spent = 0;
  try {
    for (int s = 0; s < n; ++s) {
      MembershipView view(n - 1, n - 1, [&m, &spent, budget, alpha, s](int ui, int ti) {
        spent += 2;
        if (spent > budget) throw detail::BudgetExhausted{};
        int u = ui < s ? ui : ui + 1;
        int t = ti < s ? ti : ti + 1;
        return m(u, t) < m(s, t) / alpha;
      });
      std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(s));
      Cover cover = fast_set_cover(n - 1, view, rng);
      for (int ui : cover.sets) g.add_edge(s, ui < s ? ui : ui + 1);
    }
  } catch (const detail::BudgetExhausted&) {
    // Out of queries: the partial graph is the output.
  }
  return g;
}

}  // namespace sparsenav
