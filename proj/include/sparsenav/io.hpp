#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsenav/instances.hpp"
#include "sparsenav/metric.hpp"
#include "sparsenav/navgraph.hpp"

namespace sparsenav {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

inline std::vector<double> parse_csv_row(const std::string& line, int expect,
                                         const std::string& path) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      row.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw ParseError(path + ": bad number '" + cell + "'");
    }
  }
  if (static_cast<int>(row.size()) != expect)
    throw ParseError(path + ": expected " + std::to_string(expect) + " values per row");
  return row;
}

}  // namespace detail

// `metric <n>` header, then n rows of n comma-separated distances.
inline void write_metric(const Metric& m, const std::string& path) {
  auto out = detail::open_out(path);
  out << "metric " << m.size() << "\n";
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j)
      out << (j ? "," : "") << detail::fmt_double(m(i, j));
    out << "\n";
  }
}

inline Metric read_metric(const std::string& path) {
  auto in = detail::open_in(path);
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != "metric" || n < 2)
    throw ParseError(path + ": bad metric header");
  std::string line;
  std::getline(in, line);
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError(path + ": truncated metric");
    auto row = detail::parse_csv_row(line, n, path);
    d.insert(d.end(), row.begin(), row.end());
  }
  try {
    return Metric(n, std::move(d));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// `points <n> <dim>` header, then n rows of dim comma-separated coordinates.
inline void write_points(const PointSet& ps, const std::string& path) {
  auto out = detail::open_out(path);
  out << "points " << ps.n_points << " " << ps.dim << "\n";
  for (int i = 0; i < ps.n_points; ++i) {
    for (int c = 0; c < ps.dim; ++c)
      out << (c ? "," : "") << detail::fmt_double(ps.coord(i, c));
    out << "\n";
  }
}

inline PointSet read_points(const std::string& path) {
  auto in = detail::open_in(path);
  std::string tag;
  int n = 0, dim = 0;
  if (!(in >> tag >> n >> dim) || tag != "points" || n < 1 || dim < 1)
    throw ParseError(path + ": bad points header");
  std::string line;
  std::getline(in, line);
  PointSet ps;
  ps.n_points = n;
  ps.dim = dim;
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError(path + ": truncated points");
    auto row = detail::parse_csv_row(line, dim, path);
    ps.coords.insert(ps.coords.end(), row.begin(), row.end());
  }
  return ps;
}

// `navgraph <n> <edge_count>` header, then one `s t` pair per line.
inline void write_graph(const NavGraph& g, const std::string& path) {
  auto out = detail::open_out(path);
  auto [maxdeg, edges] = degree_stats(g);
  (void)maxdeg;
  out << "navgraph " << g.size() << " " << edges << "\n";
  for (int s = 0; s < g.size(); ++s)
    for (int t : g.out(s)) out << s << " " << t << "\n";
}

inline NavGraph read_graph(const std::string& path) {
  auto in = detail::open_in(path);
  std::string tag;
  int n = 0;
  std::size_t edges = 0;
  if (!(in >> tag >> n >> edges) || tag != "navgraph" || n < 1)
    throw ParseError(path + ": bad navgraph header");
  NavGraph g(n);
  for (std::size_t e = 0; e < edges; ++e) {
    int s, t;
    if (!(in >> s >> t)) throw ParseError(path + ": truncated edge list");
    try {
      g.add_edge(s, t);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(path + ": " + ex.what());
    }
  }
  return g;
}

// `setcover <n> <m>` header, then m lines of space-separated element indices.
inline void write_setcover(const SetCoverSpec& spec, const std::string& path) {
  auto out = detail::open_out(path);
  out << "setcover " << spec.n_elements << " " << spec.n_sets() << "\n";
  for (const auto& s : spec.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << "\n";
  }
}

inline SetCoverSpec read_setcover(const std::string& path) {
  auto in = detail::open_in(path);
  std::string tag;
  int n = 0, m = 0;
  if (!(in >> tag >> n >> m) || tag != "setcover" || n < 1 || m < 1)
    throw ParseError(path + ": bad setcover header");
  std::string line;
  std::getline(in, line);
  SetCoverSpec spec;
  spec.n_elements = n;
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError(path + ": truncated set list");
    std::vector<int> s;
    std::stringstream ss(line);
    int x;
    while (ss >> x) {
      if (x < 0 || x >= n) throw ParseError(path + ": element index out of range");
      s.push_back(x);
    }
    spec.sets.push_back(std::move(s));
  }
  return spec;
}

}  // namespace sparsenav
