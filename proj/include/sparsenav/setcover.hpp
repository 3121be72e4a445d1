#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "sparsenav/instances.hpp"

namespace sparsenav {

// Deletable set over {0..n-1} with O(log n) uniform sampling: a complete
// binary tree whose internal nodes count the alive leaves beneath them.
class AliveSet {
 public:
  explicit AliveSet(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("AliveSet: empty domain");
    leaves_ = 1;
    while (leaves_ < n) leaves_ <<= 1;
    count_.assign(2 * leaves_, 0);
    for (int x = 0; x < n; ++x) count_[leaves_ + x] = 1;
    for (int v = leaves_ - 1; v >= 1; --v) count_[v] = count_[2 * v] + count_[2 * v + 1];
  }

  static AliveSet from_members(int n, const std::vector<int>& members) {
    AliveSet a(n);
    std::fill(a.count_.begin(), a.count_.end(), 0);
    for (int x : members) a.count_[a.leaves_ + x] = 1;
    for (int v = a.leaves_ - 1; v >= 1; --v)
      a.count_[v] = a.count_[2 * v] + a.count_[2 * v + 1];
    return a;
  }

  int domain_size() const { return n_; }
  int size() const { return count_[1]; }
  bool empty() const { return count_[1] == 0; }
  bool alive(int x) const { return count_[leaves_ + x] == 1; }

  // Returns false (no-op) if x is already dead.
  bool erase(int x) {
    if (!alive(x)) return false;
    for (int v = leaves_ + x; v >= 1; v /= 2) --count_[v];
    return true;
  }

  // Uniformly random alive element: descend, picking each child with
  // probability proportional to its counter.
  int sample(std::mt19937_64& rng) const {
    if (empty()) throw std::logic_error("AliveSet: sample from empty set");
    int v = 1;
    while (v < leaves_) {
      std::uniform_int_distribution<int> pick(0, count_[v] - 1);
      v = pick(rng) < count_[2 * v] ? 2 * v : 2 * v + 1;
    }
    return v - leaves_;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (int x = 0; x < n_; ++x)
      if (alive(x)) out.push_back(x);
    return out;
  }

  bool check_consistency() const {
    for (int v = 1; v < leaves_; ++v)
      if (count_[v] != count_[2 * v] + count_[2 * v + 1]) return false;
    for (int x = n_; x < leaves_; ++x)
      if (count_[leaves_ + x] != 0) return false;
    return true;
  }

 private:
  int n_;
  int leaves_;
  std::vector<int> count_;
};

// Set cover access restricted to constant-time contains(set, element)
// queries. Every query is counted.
class MembershipView {
 public:
  using Oracle = std::function<bool(int, int)>;

  MembershipView(int n_elements, int m_sets, Oracle oracle)
      : n_(n_elements), m_(m_sets), oracle_(std::move(oracle)) {}

  int universe_size() const { return n_; }
  int family_size() const { return m_; }

  bool contains(int set_idx, int elem) const {
    ++queries_;
    return oracle_(set_idx, elem);
  }

  std::uint64_t query_count() const { return queries_; }
  void reset_query_count() const { queries_ = 0; }

 private:
  int n_, m_;
  Oracle oracle_;
  mutable std::uint64_t queries_ = 0;
};

// Bitset-backed view over an explicit instance.
inline MembershipView make_view(const SetCoverSpec& spec) {
  int n = spec.n_elements, m = spec.n_sets();
  int words = (n + 63) / 64;
  auto bits = std::make_shared<std::vector<std::uint64_t>>(
      static_cast<std::size_t>(m) * words, 0);
  for (int i = 0; i < m; ++i)
    for (int x : spec.sets[i])
      (*bits)[static_cast<std::size_t>(i) * words + x / 64] |= 1ull << (x % 64);
  return MembershipView(n, m, [bits, words](int s, int x) {
    return ((*bits)[static_cast<std::size_t>(s) * words + x / 64] >> (x % 64)) & 1;
  });
}

// Johnson's greedy: repeatedly pick the set covering the most uncovered
// elements, ties broken by lowest set index.
inline std::vector<int> greedy_cover(int n, const std::vector<std::vector<int>>& sets) {
  int m = static_cast<int>(sets.size());
  std::vector<std::vector<int>> containing(n);
  for (int i = 0; i < m; ++i)
    for (int x : sets[i]) containing[x].push_back(i);
  std::vector<int> gain(m);
  for (int i = 0; i < m; ++i) gain[i] = static_cast<int>(sets[i].size());
  std::vector<char> covered(n, 0);
  int remaining = n;
  std::vector<int> cover;
  while (remaining > 0) {
    int best = -1;
    for (int i = 0; i < m; ++i)
      if (gain[i] > 0 && (best == -1 || gain[i] > gain[best])) best = i;
    if (best == -1) throw std::invalid_argument("greedy_cover: instance has no cover");
    cover.push_back(best);
    for (int x : sets[best]) {
      if (covered[x]) continue;
      covered[x] = 1;
      --remaining;
      for (int i : containing[x]) --gain[i];
    }
  }
  return cover;
}

namespace detail {

// Natural logs clamped below by 1 so sampling counts stay positive on
// tiny universes.
inline double ln_at_least_one(double x) { return std::max(std::log(x), 1.0); }

}  // namespace detail

// One simulated round of greedy set cover by sampling: looks for a set
// whose intersection with the alive universe is large. Returns nullopt
// (FAIL) when no sampled set passes the size test. All logs are natural.
inline std::optional<int> find_heavy_set(const AliveSet& alive,
                                         const MembershipView& view, int khat,
                                         int n, std::mt19937_64& rng) {
  if (alive.empty()) throw std::logic_error("find_heavy_set: empty alive set");
  if (khat < 1) throw std::invalid_argument("find_heavy_set: khat must be >= 1");
  int m = view.family_size();
  double ln_n = detail::ln_at_least_one(n);
  double ln_mn = detail::ln_at_least_one(double(m) * n);
  double threshold = 24.0 * ln_mn;
  int iters = std::max(1, static_cast<int>(std::ceil(std::log2(double(khat)))));
  std::uniform_int_distribution<int> set_pick(0, m - 1);
  for (int i = 1; i <= iters; ++i) {
    auto R = static_cast<std::int64_t>(
        std::ceil(m * ln_n * std::pow(2.0, -(i - 2))));
    auto T = static_cast<std::int64_t>(std::ceil(
        48.0 * ln_mn * std::min(std::pow(2.0, i + 3) * ln_n, 2.0 * khat)));
    std::vector<int> sets(R);
    for (auto& s : sets) s = set_pick(rng);
    std::vector<int> elems(T);
    for (auto& x : elems) x = alive.sample(rng);
    for (int s : sets) {
      std::int64_t hits = 0;
      for (std::int64_t t = 0; t < T; ++t) {
        if (view.contains(s, elems[t])) ++hits;
        if (hits >= threshold) return s;
      }
    }
  }
  return std::nullopt;
}

struct Cover {
  std::vector<int> sets;
  std::uint64_t membership_queries = 0;
};

// Membership-query set cover: doubling guess over the optimal cover size,
// each non-FAIL heavy set is added and its alive members deleted.
inline Cover fast_set_cover(int n, const MembershipView& view, std::mt19937_64& rng) {
  int m = view.family_size();
  std::uint64_t start = view.query_count();
  AliveSet alive(n);
  Cover cover;
  int khat = 1;
  while (!alive.empty()) {
    auto s = find_heavy_set(alive, view, khat, n, rng);
    if (!s) {
      khat *= 2;
      if (khat > 4 * m)
        throw std::runtime_error("fast_set_cover: likely uncoverable instance");
      continue;
    }
    cover.sets.push_back(*s);
    for (int x = 0; x < n; ++x)
      if (alive.alive(x) && view.contains(*s, x)) alive.erase(x);
  }
  // Validate against the oracle before returning.
  std::vector<char> covered(n, 0);
  for (int s : cover.sets)
    for (int x = 0; x < n; ++x)
      if (view.contains(s, x)) covered[x] = 1;
  if (!std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; }))
    throw std::logic_error("fast_set_cover: produced an invalid cover");
  cover.membership_queries = view.query_count() - start;
  return cover;
}

// Exact minimum cover size by enumerating subfamilies in increasing size.
inline int brute_force_min_cover(int n, const std::vector<std::vector<int>>& sets) {
  int m = static_cast<int>(sets.size());
  if (n > 24 || m > 24)
    throw std::invalid_argument("brute_force_min_cover: instance too large");
  std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::uint32_t> mask(m, 0);
  for (int i = 0; i < m; ++i)
    for (int x : sets[i]) mask[i] |= 1u << x;
  std::uint32_t all = 0;
  for (auto w : mask) all |= w;
  if (all != full) throw std::invalid_argument("brute_force_min_cover: no cover exists");
  for (int r = 1; r <= m; ++r) {
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint32_t u = 0;
      for (int i : idx) u |= mask[i];
      if (u == full) return r;
      int p = r - 1;
      while (p >= 0 && idx[p] == m - r + p) --p;
      if (p < 0) break;
      ++idx[p];
      for (int q = p + 1; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return m;  // unreachable: full union was checked above
}

}  // namespace sparsenav
