#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sparsenav/metric.hpp"

namespace sparsenav {

// One unsatisfied navigability constraint: no out-neighbor of s makes
// strict progress toward t.
struct Violation {
  int s, t;
  auto operator<=>(const Violation&) const = default;
};

// Directed graph with per-source sorted, duplicate-free out-neighbor lists.
class NavGraph {
 public:
  explicit NavGraph(int n) : n_(n), out_(n) {
    if (n < 1) throw std::invalid_argument("NavGraph: empty vertex set");
  }

  int size() const { return n_; }

  void add_edge(int s, int t) {
    if (s == t) throw std::invalid_argument("NavGraph: self-loop");
    if (s < 0 || s >= n_ || t < 0 || t >= n_)
      throw std::invalid_argument("NavGraph: vertex out of range");
    auto& lst = out_[s];
    auto it = std::lower_bound(lst.begin(), lst.end(), t);
    if (it == lst.end() || *it != t) lst.insert(it, t);
  }

  bool has_edge(int s, int t) const {
    const auto& lst = out_[s];
    return std::binary_search(lst.begin(), lst.end(), t);
  }

  const std::vector<int>& out(int s) const { return out_[s]; }

  bool operator==(const NavGraph& other) const = default;

 private:
  int n_;
  std::vector<std::vector<int>> out_;
};

// (max out-degree, total directed edge count)
inline std::pair<int, std::size_t> degree_stats(const NavGraph& g) {
  int maxdeg = 0;
  std::size_t edges = 0;
  for (int s = 0; s < g.size(); ++s) {
    maxdeg = std::max(maxdeg, static_cast<int>(g.out(s).size()));
    edges += g.out(s).size();
  }
  return {maxdeg, edges};
}

// Checks every ordered pair (s,t): the pair is violated when no out-neighbor
// u of s has dist(u,t) strictly below dist(s,t)/alpha. Works over any distance callable so the same code
// verifies both exact and rounded metrics. Output is (s,t)-lexicographic.
template <class Dist>
std::vector<Violation> verify_naive_fn(const NavGraph& g, int n, Dist&& dist,
                                       double alpha) {
  if (alpha < 1.0) throw std::invalid_argument("verify_naive: alpha must be >= 1");
  std::vector<Violation> out;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (t == s) continue;
      double bound = dist(s, t) / alpha;
      bool covered = false;
      for (int u : g.out(s)) {
        if (dist(u, t) < bound) {
          covered = true;
          break;
        }
      }
      if (!covered) out.push_back({s, t});
    }
  }
  return out;
}

inline std::vector<Violation> verify_naive(const NavGraph& g, const Metric& m,
                                           double alpha) {
  if (g.size() != m.size())
    throw std::invalid_argument("verify_naive: graph/metric size mismatch");
  return verify_naive_fn(
      g, m.size(), [&m](int a, int b) { return m(a, b); }, alpha);
}

}  // namespace sparsenav
