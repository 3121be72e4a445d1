#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "sparsenav/metric.hpp"
#include "sparsenav/navgraph.hpp"

namespace sparsenav {

// Explicit set cover instance: universe {0..n_elements-1} and a family of
// element-index lists.
struct SetCoverSpec {
  int n_elements = 0;
  std::vector<std::vector<int>> sets;

  int n_sets() const { return static_cast<int>(sets.size()); }

  bool covers_universe() const {
    std::vector<char> seen(n_elements, 0);
    for (const auto& s : sets)
      for (int x : s) {
        if (x < 0 || x >= n_elements)
          throw std::invalid_argument("SetCoverSpec: element index out of range");
        seen[x] = 1;
      }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }
};

struct PerturbedPathInstance {
  Metric metric;
  int hidden_i, hidden_j;
  std::uint64_t seed;
};

namespace detail {

inline int log2_exact(int n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("n must be a power of two, >= 2");
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

// Vertex index of interval I_{h,j} (1-based j), levels stacked bottom-up:
// h=0 occupies [0, n), h=1 occupies [n, n + n/2), ..., root is last.
inline int bt_index(int n, int h, int j) {
  int off = 0;
  for (int g = 0; g < h; ++g) off += n >> g;
  return off + (j - 1);
}

}  // namespace detail

// The 2n-1 interval indicator vectors in R^n: x_{h,j} has value 2^{-h/2} on
// the 2^h coordinates of its interval. Bottom-level vectors are scaled by
// (1 - shrink) so that tie order under distance sorting is forced.
inline PointSet binary_tree_pointset(int n, double shrink) {
  int levels = detail::log2_exact(n) + 1;
  if (shrink < 0.0 || shrink > 0.01)
    throw std::invalid_argument("binary_tree_pointset: shrink must be in [0, 0.01]");
  PointSet ps;
  ps.n_points = 2 * n - 1;
  ps.dim = n;
  ps.coords.assign(static_cast<std::size_t>(ps.n_points) * n, 0.0);
  for (int h = 0; h < levels; ++h) {
    double val = std::pow(2.0, -h / 2.0);
    if (h == 0) val *= 1.0 - shrink;
    for (int j = 1; j <= (n >> h); ++j) {
      int p = detail::bt_index(n, h, j);
      for (int c = (j - 1) * (1 << h); c < j * (1 << h); ++c)
        ps.coords[static_cast<std::size_t>(p) * n + c] = val;
    }
  }
  return ps;
}

// Sparse 1-navigable reference graph on the binary-tree pointset:
// parent->child tree edges plus an edge from every node to each ancestor.
inline NavGraph binary_tree_reference_graph(int n) {
  int logn = detail::log2_exact(n);
  NavGraph g(2 * n - 1);
  for (int h = 1; h <= logn; ++h) {
    for (int j = 1; j <= (n >> h); ++j) {
      int p = detail::bt_index(n, h, j);
      g.add_edge(p, detail::bt_index(n, h - 1, 2 * j - 1));
      g.add_edge(p, detail::bt_index(n, h - 1, 2 * j));
    }
  }
  for (int h = 0; h < logn; ++h) {
    for (int j = 1; j <= (n >> h); ++j) {
      int p = detail::bt_index(n, h, j);
      for (int ha = h + 1; ha <= logn; ++ha) {
        int ja = (j - 1) / (1 << (ha - h)) + 1;
        g.add_edge(p, detail::bt_index(n, ha, ja));
      }
    }
  }
  return g;
}

// Vertex layout of the gadget metric: roots 0..L-1 first, then gadget q
// at offset L + q*(m+n), sets before elements within a gadget.
struct GadgetLayout {
  int L, m, n;
  int root(int l) const { return l; }
  int set_vertex(int q, int i) const { return L + q * (m + n) + i; }
  int elem_vertex(int q, int j) const { return L + q * (m + n) + m + j; }
  int total() const { return L * (m + n + 1); }
};

// Shortest-path metric over L roots and L identical gadgets encoding a
// set cover instance: root-set edges weight 1, set-set edges 1-gamma,
// membership edges 1, root-element shortcuts 2-gamma.
inline Metric gadget_metric(const SetCoverSpec& spec, int L, double gamma) {
  int m = spec.n_sets(), n = spec.n_elements;
  if (L < m + n) throw std::invalid_argument("gadget_metric: L must be >= m+n");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("gadget_metric: gamma must be in (0, 0.5)");
  if (!spec.covers_universe())
    throw std::invalid_argument("gadget_metric: no cover exists");
  GadgetLayout lay{L, m, n};
  WeightedGraph g(lay.total());
  for (int q = 0; q < L; ++q) {
    for (int i = 0; i < m; ++i) {
      for (int l = 0; l < L; ++l) g.add_edge(lay.root(l), lay.set_vertex(q, i), 1.0);
      for (int i2 = i + 1; i2 < m; ++i2)
        g.add_edge(lay.set_vertex(q, i), lay.set_vertex(q, i2), 1.0 - gamma);
      for (int x : spec.sets[i]) g.add_edge(lay.set_vertex(q, i), lay.elem_vertex(q, x), 1.0);
    }
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < L; ++l)
        g.add_edge(lay.root(l), lay.elem_vertex(q, j), 2.0 - gamma);
  }
  return shortest_path_closure(g);
}

// 1-navigable reference graph for the gadget metric built from a valid
// cover: every root points at the cover's set vertices in every gadget,
// each gadget is a complete digraph, every gadget vertex points at the
// first root, and every set vertex points at all roots. The last rule is
// forced: d(S, r) = 1 and only r itself is strictly closer to r, so a set
// vertex can only satisfy its constraint toward a root with a direct edge.
inline NavGraph gadget_reference_graph(const SetCoverSpec& spec, int L,
                                       const std::vector<int>& cover) {
  int m = spec.n_sets(), n = spec.n_elements;
  std::vector<char> covered(n, 0);
  for (int i : cover) {
    if (i < 0 || i >= m) throw std::invalid_argument("gadget_reference_graph: bad set index");
    for (int x : spec.sets[i]) covered[x] = 1;
  }
  if (cover.empty() ||
      !std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; }))
    throw std::invalid_argument("gadget_reference_graph: not a valid cover");
  GadgetLayout lay{L, m, n};
  NavGraph g(lay.total());
  for (int l = 0; l < L; ++l)
    for (int q = 0; q < L; ++q)
      for (int i : cover) g.add_edge(lay.root(l), lay.set_vertex(q, i));
  for (int q = 0; q < L; ++q) {
    int base = lay.set_vertex(q, 0);
    for (int a = 0; a < m + n; ++a) {
      for (int b = 0; b < m + n; ++b)
        if (a != b) g.add_edge(base + a, base + b);
      g.add_edge(base + a, lay.root(0));
    }
    for (int i = 0; i < m; ++i)
      for (int l = 1; l < L; ++l) g.add_edge(lay.set_vertex(q, i), lay.root(l));
  }
  return g;
}

// Near-path metric d(i,j) = 1 + |i-j|/(n-1) with one uniformly random pair
// overwritten to distance exactly 1.
inline PerturbedPathInstance perturbed_path(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("perturbed_path: need n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  int i = 0, j = 0;
  while (i == j) {
    i = pick(rng);
    j = pick(rng);
  }
  if (i > j) std::swap(i, j);
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b)
        d[static_cast<std::size_t>(a) * n + b] = 1.0 + std::abs(a - b) / double(n - 1);
  d[static_cast<std::size_t>(i) * n + j] = 1.0;
  d[static_cast<std::size_t>(j) * n + i] = 1.0;
  return PerturbedPathInstance{Metric(n, std::move(d)), i, j, seed};
}

// Bidirected path plus the hidden shortcut; max out-degree 3.
inline NavGraph perturbed_path_reference_graph(const PerturbedPathInstance& inst) {
  int n = inst.metric.size();
  NavGraph g(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.add_edge(i, i + 1);
    g.add_edge(i + 1, i);
  }
  g.add_edge(inst.hidden_i, inst.hidden_j);
  g.add_edge(inst.hidden_j, inst.hidden_i);
  return g;
}

inline PointSet random_euclidean(int n, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointSet ps;
  ps.n_points = n;
  ps.dim = dim;
  ps.coords.resize(static_cast<std::size_t>(n) * dim);
  for (auto& c : ps.coords) c = gauss(rng);
  return ps;
}

inline Metric uniform_metric(int n) {
  std::vector<double> d(static_cast<std::size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
  return Metric(n, std::move(d));
}

// Set cover instance with a planted optimum: k equal blocks partitioning the
// universe (the only cover of size k) plus m-k random decoy sets of size at
// most n/(2k). Requires k | n.
inline SetCoverSpec planted_setcover(int n, int m, int k, std::uint64_t seed) {
  if (k < 1 || m < k || n % k != 0)
    throw std::invalid_argument("planted_setcover: need k >= 1, m >= k, k | n");
  std::mt19937_64 rng(seed);
  SetCoverSpec spec;
  spec.n_elements = n;
  int block = n / k;
  for (int b = 0; b < k; ++b) {
    std::vector<int> s(block);
    std::iota(s.begin(), s.end(), b * block);
    spec.sets.push_back(std::move(s));
  }
  int max_decoy = std::max(1, n / (2 * k));
  std::uniform_int_distribution<int> size_pick(1, max_decoy);
  std::uniform_int_distribution<int> elem_pick(0, n - 1);
  for (int i = k; i < m; ++i) {
    int sz = size_pick(rng);
    std::vector<int> s;
    while (static_cast<int>(s.size()) < sz) {
      int x = elem_pick(rng);
      if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
    }
    std::sort(s.begin(), s.end());
    spec.sets.push_back(std::move(s));
  }
  return spec;
}

}  // namespace sparsenav
