// Command-line surface for generating instances, building navigable graphs,
// verifying navigability, and running the benchmark suites.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsenav/instances.hpp"
#include "sparsenav/io.hpp"
#include "sparsenav/metric.hpp"
#include "sparsenav/navbuild.hpp"
#include "sparsenav/navgraph.hpp"

namespace sn = sparsenav;
using nlohmann::json;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitBuildVerifyFailed = 2;
constexpr int kExitParse = 64;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Metric files are accepted directly; pointset files are converted on load.
sn::Metric load_metric_or_points(const std::string& path) {
  auto in = sn::detail::open_in(path);
  std::string tag;
  in >> tag;
  in.close();
  if (tag == "points") return sn::from_points(sn::read_points(path));
  return sn::read_metric(path);
}

json report_to_json(const sn::BuildReport& r) {
  return json{{"algorithm", r.algorithm},
              {"alpha", r.alpha},
              {"eps", r.eps},
              {"edge_count", r.edge_count},
              {"max_out_degree", r.max_out_degree},
              {"distance_query_count", r.distance_query_count},
              {"wall_time", r.wall_time_seconds},
              {"seed", r.seed}};
}

struct CsvWriter {
  std::ofstream out;

  explicit CsvWriter(const std::string& path) : out(path) {
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "instance,algorithm,n,alpha,edges,maxdeg,queries,seconds\n";
  }

  void row(const std::string& instance, const std::string& algorithm, int n,
           double alpha, std::size_t edges, std::size_t maxdeg,
           std::uint64_t queries, double seconds) {
    out << instance << "," << algorithm << "," << n << "," << alpha << ","
        << edges << "," << maxdeg << "," << queries << "," << seconds << "\n";
  }
};

int run_generate(const std::string& kind, int n, int dim, std::uint64_t seed,
                 double shrink, const std::string& spec_path, int L, double gamma,
                 const std::string& out, const std::string& metric_out) {
  if (kind == "binary-tree") {
    auto ps = sn::binary_tree_pointset(n, shrink);
    sn::write_points(ps, out);
    if (!metric_out.empty()) sn::write_metric(sn::from_points(ps), metric_out);
  } else if (kind == "random-euclidean") {
    auto ps = sn::random_euclidean(n, dim, seed);
    sn::write_points(ps, out);
    if (!metric_out.empty()) sn::write_metric(sn::from_points(ps), metric_out);
  } else if (kind == "uniform") {
    sn::write_metric(sn::uniform_metric(n), out);
  } else if (kind == "gadget") {
    auto spec = sn::read_setcover(spec_path);
    sn::write_metric(sn::gadget_metric(spec, L, gamma), out);
  } else if (kind == "perturbed-path") {
    auto inst = sn::perturbed_path(n, seed);
    sn::write_metric(inst.metric, out);
    std::ofstream side(out + ".meta.json");
    side << json{{"hidden_i", inst.hidden_i},
                 {"hidden_j", inst.hidden_j},
                 {"seed", inst.seed}}
                .dump(2)
         << "\n";
  } else {
    throw CLI::ValidationError("unknown instance kind: " + kind);
  }
  return 0;
}

int run_build(const std::string& algorithm, const std::string& metric_path,
              double alpha, double eps, std::uint64_t seed,
              const std::string& out) {
  sn::Metric m = load_metric_or_points(metric_path);
  auto t0 = std::chrono::steady_clock::now();
  sn::BuildResult res = [&] {
    if (algorithm == "slow-diskann") return sn::slow_diskann(m, alpha);
    if (algorithm == "greedy") return sn::greedy_nav(m, alpha);
    if (algorithm == "fast") return sn::fast_nav(m, alpha, seed);
    if (algorithm == "bicriteria") return sn::build_nav(m, alpha, eps, seed);
    throw CLI::ValidationError("unknown algorithm: " + algorithm);
  }();
  double elapsed = seconds_since(t0);
  auto [maxdeg, edges] = sn::degree_stats(res.graph);
  if (!out.empty()) sn::write_graph(res.graph, out);
  sn::BuildReport report{algorithm, alpha,        eps,  edges,
                         maxdeg,    res.distance_queries, elapsed, seed};
  std::cout << report_to_json(report).dump(2) << "\n";
  auto violations = sn::verify_naive(res.graph, m, alpha);
  if (!violations.empty()) {
    std::cerr << "build verification FAILED: " << violations.size()
              << " violations, e.g. (" << violations[0].s << ","
              << violations[0].t << ")\n";
    return kExitBuildVerifyFailed;
  }
  return 0;
}

int run_verify(const std::string& graph_path, const std::string& metric_path,
               double alpha, bool batched, double eps, std::size_t max_listed) {
  sn::NavGraph g = sn::read_graph(graph_path);
  sn::Metric m = load_metric_or_points(metric_path);
  if (g.size() != m.size()) throw sn::ParseError("graph/metric size mismatch");

  auto t0 = std::chrono::steady_clock::now();
  auto violations = sn::verify_naive(g, m, alpha);
  double naive_time = seconds_since(t0);

  auto [maxdeg, edges] = sn::degree_stats(g);
  std::cout << "n=" << g.size() << " edges=" << edges << " maxdeg=" << maxdeg
            << " alpha=" << alpha << "\n";
  std::cout << "naive verifier: " << violations.size() << " violations, "
            << naive_time << " s\n";

  if (batched) {
    sn::DiscretizedMetric dm(m, eps);
    auto t1 = std::chrono::steady_clock::now();
    auto batched_res = sn::verify_nav_batched(dm, g, alpha);
    double batched_time = seconds_since(t1);
    std::size_t count = 0;
    for (const auto& u : batched_res) count += u.size();
    std::cout << "batched verifier (eps=" << eps << ", rounded metric): " << count
              << " violations, " << batched_time << " s\n";
  }

  for (std::size_t i = 0; i < violations.size() && i < max_listed; ++i)
    std::cout << "violation " << violations[i].s << " " << violations[i].t << "\n";
  return violations.empty() ? 0 : kExitViolations;
}

int run_bench(const std::string& suite, const std::string& out_csv,
              std::uint64_t seed, std::uint64_t budget) {
  CsvWriter csv(out_csv);
  if (suite == "diskann-gap") {
    for (int n : {8, 16, 32}) {
      sn::Metric m = sn::from_points(sn::binary_tree_pointset(n, 1e-4));
      std::string inst = "binary-tree-" + std::to_string(n);
      auto t0 = std::chrono::steady_clock::now();
      auto slow = sn::slow_diskann(m, 1.0);
      double ts = seconds_since(t0);
      auto [sd, se] = sn::degree_stats(slow.graph);
      csv.row(inst, "slow-diskann", m.size(), 1.0, se, sd, slow.distance_queries, ts);
      t0 = std::chrono::steady_clock::now();
      auto greedy = sn::greedy_nav(m, 1.0);
      double tg = seconds_since(t0);
      auto [gd, ge] = sn::degree_stats(greedy.graph);
      csv.row(inst, "greedy", m.size(), 1.0, ge, gd, greedy.distance_queries, tg);
      auto ref = sn::binary_tree_reference_graph(n);
      auto [rd, re] = sn::degree_stats(ref);
      csv.row(inst, "reference", m.size(), 1.0, re, rd, 0, 0.0);
    }
  } else if (suite == "setcover-scaling") {
    for (int k : {2, 4, 8, 16}) {
      for (std::uint64_t s = 0; s < 3; ++s) {
        auto spec = sn::planted_setcover(496, 500, k, seed + 1000 * k + s);
        auto view = sn::make_view(spec);
        std::mt19937_64 rng(seed + 31 * k + s);
        auto t0 = std::chrono::steady_clock::now();
        auto cover = sn::fast_set_cover(spec.n_elements, view, rng);
        csv.row("planted-k" + std::to_string(k) + "-s" + std::to_string(s),
                "fast-set-cover", spec.n_elements, 0.0, cover.sets.size(), k,
                cover.membership_queries, seconds_since(t0));
      }
    }
  } else if (suite == "bicriteria-quality") {
    double alpha = 1.0, eps = 0.1;
    for (int n : {32, 64, 128}) {
      for (std::uint64_t s = 0; s < 5; ++s) {
        sn::Metric m = sn::from_points(sn::random_euclidean(n, 4, seed + 100 * n + s));
        std::string inst = "random-euclidean-" + std::to_string(n) + "-s" + std::to_string(s);
        auto t0 = std::chrono::steady_clock::now();
        auto built = sn::build_nav(m, alpha, eps, seed + s);
        double tb = seconds_since(t0);
        auto [bd, be] = sn::degree_stats(built.graph);
        csv.row(inst, "bicriteria", n, alpha, be, bd, built.distance_queries, tb);
        t0 = std::chrono::steady_clock::now();
        auto greedy = sn::greedy_nav(m, 2.0 * alpha * (1.0 + eps));
        double tg = seconds_since(t0);
        auto [gd, ge] = sn::degree_stats(greedy.graph);
        csv.row(inst, "greedy-2a(1+eps)", n, 2.0 * alpha * (1.0 + eps), ge, gd,
                greedy.distance_queries, tg);
      }
    }
  } else if (suite == "query-lb-demo") {
    int n = 200;
    int seeds = 50;
    if (budget == 0) budget = static_cast<std::uint64_t>(std::pow(n, 1.5));
    int misses = 0;
    for (int s = 0; s < seeds; ++s) {
      auto inst = sn::perturbed_path(n, seed + s);
      auto t0 = std::chrono::steady_clock::now();
      auto g = sn::budget_capped_nav(inst.metric, 1.0, budget, seed + 7919 * s);
      bool has_hidden = g.has_edge(inst.hidden_i, inst.hidden_j) ||
                        g.has_edge(inst.hidden_j, inst.hidden_i);
      if (!has_hidden) ++misses;
      auto [gd, ge] = sn::degree_stats(g);
      csv.row("perturbed-path-" + std::to_string(n) + "-s" + std::to_string(s),
              "budget-capped", n, 1.0, ge, gd, budget, seconds_since(t0));
    }
    double fraction = double(misses) / seeds;
    csv.row("query-lb-demo-summary", "miss-fraction", n, 1.0, misses, seeds,
            budget, fraction);
    std::cout << "hidden-edge miss fraction: " << fraction << " (" << misses
              << "/" << seeds << " seeds, budget " << budget << ")\n";
  } else {
    throw CLI::ValidationError("unknown suite: " + suite);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse navigable graph construction toolkit"};
  app.require_subcommand(1);

  std::string kind, spec_path, out, metric_out, algorithm, metric_path, graph_path, suite;
  int n = 16, dim = 4, L = 0;
  double alpha = 1.0, eps = 0.1, gamma = 0.1, shrink = 1e-4;
  std::uint64_t seed = 0, budget = 0;
  bool batched = false;

  auto* gen = app.add_subcommand("generate", "generate an instance file");
  gen->add_option("kind", kind,
                  "binary-tree | gadget | perturbed-path | random-euclidean | uniform")
      ->required();
  gen->add_option("--n", n, "point count (power of two for binary-tree)");
  gen->add_option("--dim", dim, "dimension for random-euclidean");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--shrink", shrink, "bottom-level shrink for binary-tree");
  gen->add_option("--spec", spec_path, "setcover file for gadget");
  gen->add_option("--L", L, "gadget replication factor");
  gen->add_option("--gamma", gamma, "gadget edge-weight parameter");
  gen->add_option("--out", out, "output path")->required();
  gen->add_option("--metric-out", metric_out, "also write the derived metric here");

  auto* build = app.add_subcommand("build", "build a navigable graph");
  build->add_option("algorithm", algorithm, "slow-diskann | greedy | fast | bicriteria")
      ->required();
  build->add_option("metric", metric_path, "metric or points file")->required();
  build->add_option("--alpha", alpha, "navigability parameter (>= 1)");
  build->add_option("--eps", eps, "discretization parameter for bicriteria");
  build->add_option("--seed", seed, "RNG seed");
  build->add_option("--out", out, "graph output path");

  auto* verify = app.add_subcommand("verify", "verify alpha-navigability");
  verify->add_option("graph", graph_path, "navgraph file")->required();
  verify->add_option("metric", metric_path, "metric or points file")->required();
  verify->add_option("--alpha", alpha, "navigability parameter (>= 1)");
  auto* batched_flag = verify->add_flag("--batched", batched, "also run the batched verifier");
  auto* eps_opt = verify->add_option("--eps", eps, "discretization parameter for --batched");
  batched_flag->needs(eps_opt);

  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", suite,
                    "diskann-gap | setcover-scaling | bicriteria-quality | query-lb-demo")
      ->required();
  bench->add_option("--out", out, "output CSV path")->required();
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--budget", budget, "distance-query budget for query-lb-demo");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_generate(kind, n, dim, seed, shrink, spec_path, L, gamma, out, metric_out);
    if (build->parsed()) return run_build(algorithm, metric_path, alpha, eps, seed, out);
    if (verify->parsed()) return run_verify(graph_path, metric_path, alpha, batched, eps, 10);
    if (bench->parsed()) return run_bench(suite, out, seed, budget);
  } catch (const sn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 65;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
