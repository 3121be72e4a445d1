#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsenav {

// Dense finite metric space on n points. Distances are stored row-major
// as 64-bit floats. Construction enforces: zero diagonal, symmetry,
// strictly positive off-diagonal entries (duplicate points are rejected),
// and the triangle inequality within relative tolerance 1e-9.
class Metric {
 public:
  Metric(int n, std::vector<double> dist) : n_(n), d_(std::move(dist)) {
    if (n_ < 2) throw std::invalid_argument("Metric: need at least 2 points");
    if (d_.size() != static_cast<std::size_t>(n_) * n_)
      throw std::invalid_argument("Metric: matrix size mismatch");
    validate();
  }

  int size() const { return n_; }

  double operator()(int i, int j) const {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }

  const std::vector<double>& data() const { return d_; }

 private:
  void validate() {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        double v = (*this)(i, j);
        if (!std::isfinite(v) || v < 0.0)
          throw std::invalid_argument("Metric: non-finite or negative distance");
        if (i == j && v != 0.0)
          throw std::invalid_argument("Metric: nonzero diagonal");
        if (i != j && v == 0.0)
          throw std::invalid_argument(
              "Metric: duplicate points (zero off-diagonal distance at (" +
              std::to_string(i) + "," + std::to_string(j) + "))");
      }
    }
    // Symmetrize after checking agreement to 1e-12 relative, so that
    // d(i,j) == d(j,i) holds exactly downstream.
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        double a = (*this)(i, j), b = (*this)(j, i);
        if (std::abs(a - b) > 1e-12 * std::max(a, b))
          throw std::invalid_argument("Metric: asymmetric distances");
        d_[static_cast<std::size_t>(j) * n_ + i] = a;
      }
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          if ((*this)(i, k) > ((*this)(i, j) + (*this)(j, k)) * (1.0 + 1e-9))
            throw std::invalid_argument("Metric: triangle inequality violated");
  }

  int n_;
  std::vector<double> d_;
};

struct PointSet {
  int n_points = 0;
  int dim = 0;
  std::vector<double> coords;  // row-major n_points x dim

  double coord(int p, int c) const {
    return coords[static_cast<std::size_t>(p) * dim + c];
  }
};

// Euclidean metric over a pointset.
inline Metric from_points(const PointSet& ps) {
  if (ps.n_points < 2) throw std::invalid_argument("from_points: need at least 2 points");
  for (double c : ps.coords)
    if (!std::isfinite(c)) throw std::invalid_argument("from_points: non-finite coordinate");
  int n = ps.n_points;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < ps.dim; ++c) {
        double diff = ps.coord(i, c) - ps.coord(j, c);
        s += diff * diff;
      }
      double v = std::sqrt(s);
      d[static_cast<std::size_t>(i) * n + j] = v;
      d[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
  return Metric(n, std::move(d));
}

// Max off-diagonal distance over min off-diagonal distance.
inline double aspect_ratio(const Metric& m) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i + 1; j < m.size(); ++j) {
      lo = std::min(lo, m(i, j));
      hi = std::max(hi, m(i, j));
    }
  }
  if (lo <= 0.0) throw std::invalid_argument("aspect_ratio: degenerate metric");
  return hi / lo;
}

// Metric with every off-diagonal distance rounded down to an integer power
// of (1+eps). Only the exponents are stored; rounded(s,t) returns the shared
// cached power so all consumers compare bit-identical doubles.
class DiscretizedMetric {
 public:
  DiscretizedMetric(const Metric& m, double eps)
      : base_(m), eps_(eps), level_(static_cast<std::size_t>(m.size()) * m.size(), 0) {
    if (!(eps > 0.0 && eps < 1.0))
      throw std::invalid_argument("discretize: eps must be in (0,1)");
    int n = m.size();
    double log1e = std::log1p(eps);
    min_level_ = std::numeric_limits<int>::max();
    max_level_ = std::numeric_limits<int>::min();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        double d = m(i, j);
        int k = static_cast<int>(std::floor(std::log(d) / log1e));
        // Floating-point log can misround at exact powers; nudge and re-check.
        if (std::pow(1.0 + eps, k + 1) <= d * (1.0 + 1e-12)) ++k;
        if (std::pow(1.0 + eps, k) > d) --k;
        level_[static_cast<std::size_t>(i) * n + j] = k;
        min_level_ = std::min(min_level_, k);
        max_level_ = std::max(max_level_, k);
      }
    }
    pow_cache_.resize(max_level_ - min_level_ + 2);
    for (int k = min_level_; k <= max_level_ + 1; ++k)
      pow_cache_[k - min_level_] = std::pow(1.0 + eps, k);
  }

  const Metric& base() const { return base_; }
  double eps() const { return eps_; }
  int size() const { return base_.size(); }
  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  int num_levels() const { return max_level_ - min_level_ + 1; }

  int level(int s, int t) const {
    return level_[static_cast<std::size_t>(s) * base_.size() + t];
  }

  // Value of (1+eps)^k for k in [min_level, max_level+1].
  double power(int k) const { return pow_cache_[k - min_level_]; }

  double rounded(int s, int t) const {
    if (s == t) return 0.0;
    return power(level(s, t));
  }

 private:
  Metric base_;
  double eps_;
  std::vector<int> level_;
  std::vector<double> pow_cache_;
  int min_level_;
  int max_level_;
};

inline DiscretizedMetric discretize(const Metric& m, double eps) {
  return DiscretizedMetric(m, eps);
}

struct WeightedGraph {
  struct Edge {
    int u, v;
    double w;
  };

  explicit WeightedGraph(int n) : n_vertices(n) {}

  void add_edge(int u, int v, double w) {
    if (u == v) throw std::invalid_argument("WeightedGraph: self-loop");
    if (!(w > 0.0)) throw std::invalid_argument("WeightedGraph: nonpositive weight");
    edges.push_back({u, v, w});
  }

  int n_vertices;
  std::vector<Edge> edges;
};

// All-pairs shortest path distances of a connected weighted graph,
// via the cubic dynamic-programming closure.
inline Metric shortest_path_closure(const WeightedGraph& g) {
  int n = g.n_vertices;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
  for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
  for (const auto& e : g.edges) {
    auto& a = d[static_cast<std::size_t>(e.u) * n + e.v];
    auto& b = d[static_cast<std::size_t>(e.v) * n + e.u];
    a = std::min(a, e.w);
    b = std::min(b, e.w);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double dik = d[static_cast<std::size_t>(i) * n + k];
      if (dik == inf) continue;
      for (int j = 0; j < n; ++j) {
        double v = dik + d[static_cast<std::size_t>(k) * n + j];
        auto& cur = d[static_cast<std::size_t>(i) * n + j];
        if (v < cur) cur = v;
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[static_cast<std::size_t>(i) * n + j] == inf)
        throw std::invalid_argument("shortest_path_closure: unreachable pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  return Metric(n, std::move(d));
}

}  // namespace sparsenav
