// Command-line surface for the motif counting engine: convert, build,
// sample, ags, exact, metrics.
//
// Exit codes: 0 ok, 2 input error, 3 resource error, 4 partial results.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "motif/ags.hpp"
#include "motif/build.hpp"
#include "motif/graph.hpp"
#include "motif/oracle.hpp"
#include "motif/results.hpp"
#include "motif/sample.hpp"

namespace {

using namespace motif;

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open graph file: " + path);
  return Graph::read_binary(in);
}

std::string scratch_dir() {
  const char* env = std::getenv("MOTIF_SCRATCH");
  return env ? std::string(env) : std::string();
}

int read_manifest_k(const std::string& dir) {
  std::ifstream in(dir + "/manifest.txt");
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("k=", 0) == 0) return std::stoi(line.substr(2));
  throw parse_error("no manifest in table directory: " + dir);
}

void write_results(const ResultSet& rs, const std::string& path, bool json) {
  if (path.empty() || path == "-") {
    if (json)
      rs.write_json(std::cout);
    else
      rs.write_csv(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw format_error("cannot write results: " + path);
  if (json)
    rs.write_json(out);
  else
    rs.write_csv(out);
}

int cmd_convert(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw parse_error("cannot open edge list: " + in_path);
  std::vector<u64> original_ids;
  Graph g = Graph::load_edge_list(in, &original_ids);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw format_error("cannot write graph: " + out_path);
  g.write_binary(out);
  out.close();
  std::ofstream ids(out_path + ".ids");
  for (u64 id : original_ids) ids << id << "\n";
  Graph::Stats stats = g.stats();
  std::cout << "n=" << stats.n << " m=" << stats.m << " max_degree=" << stats.max_degree
            << "\n";
  return 0;
}

struct BuildArgs {
  std::string graph_path, out_dir;
  int k = 5;
  u64 seed = 0;
  int threads = 1;
  double lambda = 0;
  double auto_lambda_b = 0;
};

int cmd_build(const BuildArgs& args) {
  Graph g = load_graph(args.graph_path);
  BuildConfig cfg;
  cfg.k = args.k;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  cfg.table_dir = args.out_dir;
  if (args.lambda > 0) cfg.lambda = args.lambda;
  if (args.auto_lambda_b > 0) {
    LambdaChoice choice = choose_lambda(g, args.k, args.auto_lambda_b, args.seed);
    if (choice.capped)
      std::cerr << "warning: lambda schedule capped; using uniform-equivalent "
                << choice.lambda << "\n";
    cfg.lambda = choice.lambda;
    std::cout << "lambda=" << choice.lambda << " doublings=" << choice.doublings << "\n";
  }
  Coloring coloring = color_graph(g, cfg);
  CountTable table = build_tables(g, coloring, cfg);
  {
    std::ofstream manifest(args.out_dir + "/manifest.txt", std::ios::app);
    manifest << "graph=" << args.graph_path << "\n";
  }
  std::cout << "k=" << table.k() << " total_treelets=" << dec_string(table.total_treelets())
            << "\n";
  for (int h = 1; h <= table.k(); ++h)
    std::cout << "h" << h << " records=" << table.record_count(h)
              << " entries=" << table.entry_count(h) << "\n";
  return 0;
}

struct SampleArgs {
  std::string graph_path, tables_dir, out_path, sigma_cache;
  int k = 0;
  u64 samples = 0;
  double time_budget = 0;
  int colorings = 1;
  u64 seed = 0;
  int threads = 1;
  bool json = false;
};

int cmd_sample(const SampleArgs& args) {
  Graph g = load_graph(args.graph_path);
  SigmaCache sigma;
  if (!args.sigma_cache.empty()) sigma.load(args.sigma_cache);
  auto t0 = std::chrono::steady_clock::now();

  int k = args.k;
  if (k == 0 && !args.tables_dir.empty()) k = read_manifest_k(args.tables_dir);
  if (k == 0) throw parse_error("need --k or --tables");

  std::map<GraphletCode, double> g_sum, c_sum;
  std::map<GraphletCode, u64> samples_sum;
  u64 total_samples = 0;
  for (int run = 0; run < args.colorings; ++run) {
    CountTable table;
    if (!args.tables_dir.empty() && args.colorings == 1) {
      table = CountTable::open_dir(args.tables_dir);
      if (table.k() != k)
        throw parse_error("--k disagrees with the table directory (k=" +
                          std::to_string(table.k()) + ")");
    } else {
      BuildConfig cfg;
      cfg.k = k;
      cfg.seed = args.seed + static_cast<u64>(run);
      cfg.threads = args.threads;
      std::string scratch = scratch_dir();
      if (!scratch.empty())
        cfg.table_dir = scratch + "/tables_seed" + std::to_string(cfg.seed);
      table = build_tables(g, color_graph(g, cfg), cfg);
    }
    if (table.total_treelets() == 0) {
      std::cerr << "warning: empty urn for coloring " << run << "; estimates are zero\n";
      continue;
    }
    NaiveRun nr = naive_run(table, g, args.samples, args.time_budget,
                            args.seed + static_cast<u64>(run), args.threads, sigma);
    total_samples += nr.samples;
    for (const auto& [code, est] : nr.estimates) {
      g_sum[code] += est.uncolored;
      c_sum[code] += est.colorful;
      samples_sum[code] += est.samples;
    }
  }

  ResultSet rs;
  rs.k = k;
  rs.seed = args.seed;
  rs.mode = "naive";
  rs.total_samples = total_samples;
  rs.colorings = args.colorings;
  double g_total = 0;
  for (const auto& [code, v] : g_sum) g_total += v;
  for (const auto& [code, v] : g_sum) {
    ResultRow row;
    row.code = code;
    row.g_hat = v / args.colorings;
    row.colorful_hat = c_sum[code] / args.colorings;
    row.samples = samples_sum[code];
    row.frequency = g_total > 0 ? v / g_total : 0;
    rs.rows.push_back(row);
  }
  rs.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_results(rs, args.out_path, args.json);
  if (!args.sigma_cache.empty()) sigma.save(args.sigma_cache);
  return 0;
}

struct AgsArgs {
  std::string graph_path, tables_dir, out_path, diag_path, sigma_cache;
  int k = 0;
  double epsilon = 0, delta = 0;
  u64 cbar_value = 0;
  u64 max_samples = 10000000;
  u64 seed = 0;
  int threads = 1;
  bool json = false;
};

int cmd_ags(const AgsArgs& args) {
  Graph g = load_graph(args.graph_path);
  auto t0 = std::chrono::steady_clock::now();
  int k = args.k;
  CountTable table;
  if (!args.tables_dir.empty()) {
    table = CountTable::open_dir(args.tables_dir);
    k = table.k();
  } else {
    if (k == 0) throw parse_error("need --k or --tables");
    BuildConfig cfg;
    cfg.k = k;
    cfg.seed = args.seed;
    cfg.threads = args.threads;
    table = build_tables(g, color_graph(g, cfg), cfg);
  }

  AgsConfig cfg;
  cfg.seed = args.seed;
  cfg.max_samples = args.max_samples;
  if (args.epsilon > 0 && args.delta > 0) {
    cfg.epsilon = args.epsilon;
    cfg.delta = args.delta;
  } else {
    cfg.cbar_override = args.cbar_value > 0 ? args.cbar_value : 1000;
  }

  SigmaCache sigma;
  if (!args.sigma_cache.empty()) sigma.load(args.sigma_cache);
  std::ofstream diag;
  std::ostream* diag_out = nullptr;
  if (!args.diag_path.empty()) {
    diag.open(args.diag_path);
    if (!diag) throw format_error("cannot write diagnostics: " + args.diag_path);
    diag_out = &diag;
  }
  AgsResult ags = ags_run(table, g, cfg, sigma, diag_out);

  ResultSet rs;
  rs.k = table.k();
  rs.seed = args.seed;
  rs.mode = "ags";
  rs.total_samples = ags.total_samples;
  double g_total = 0;
  for (const auto& [code, stat] : ags.graphlets) g_total += stat.uncolored_estimate;
  for (const auto& [code, stat] : ags.graphlets) {
    ResultRow row;
    row.code = code;
    row.g_hat = stat.uncolored_estimate;
    row.colorful_hat = stat.colorful_estimate;
    row.samples = stat.samples;
    row.frequency = g_total > 0 ? stat.uncolored_estimate / g_total : 0;
    row.covered = stat.covered;
    rs.rows.push_back(row);
  }
  rs.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_results(rs, args.out_path, args.json);
  if (!args.sigma_cache.empty()) sigma.save(args.sigma_cache);
  std::cout << "samples=" << ags.total_samples << " threshold=" << ags.threshold
            << " graphlets=" << ags.graphlets.size() << " partial=" << (ags.partial ? 1 : 0)
            << "\n";
  return ags.partial ? 4 : 0;
}

int cmd_exact(const std::string& graph_path, int k, const std::string& out_path,
              u64 max_subgraphs) {
  Graph g = load_graph(graph_path);
  Census census = exact_census(g, k, max_subgraphs);
  if (out_path.empty() || out_path == "-") {
    write_census_csv(std::cout, census);
  } else {
    std::ofstream out(out_path);
    if (!out) throw format_error("cannot write census: " + out_path);
    write_census_csv(out, census);
  }
  return 0;
}

int cmd_metrics(const std::string& estimates_path, const std::string& truth_path) {
  std::ifstream est_in(estimates_path);
  if (!est_in) throw parse_error("cannot open estimates: " + estimates_path);
  ResultSet rs = ResultSet::read_csv(est_in);
  std::ifstream truth_in(truth_path);
  if (!truth_in) throw parse_error("cannot open truth: " + truth_path);
  Census truth = read_census_csv(truth_in);
  MetricsReport report = compute_metrics(rs, truth);
  std::cout << "l1=" << report.l1 << "\n";
  std::cout << "fraction_within_50pct=" << report.fraction_within_half << "\n";
  if (report.rarest_found_frequency)
    std::cout << "rarest_found_frequency=" << *report.rarest_found_frequency << "\n";
  else
    std::cout << "rarest_found_frequency=none\n";
  for (const auto& [code, err] : report.err)
    std::cout << "err," << code.hex() << ',' << err << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motif counting engine"};
  app.require_subcommand(1);

  std::string in_path, out_path, graph_path, tables_dir, truth_path;
  auto* convert = app.add_subcommand("convert", "edge list text to binary graph");
  convert->add_option("input", in_path, "edge list file")->required();
  convert->add_option("output", out_path, "binary graph file")->required();

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "build treelet count tables");
  build->add_option("graph", build_args.graph_path)->required();
  build->add_option("--out", build_args.out_dir, "table directory")->required();
  build->add_option("--k", build_args.k)->required();
  build->add_option("--seed", build_args.seed);
  build->add_option("--threads", build_args.threads);
  build->add_option("--lambda", build_args.lambda, "biased coloring weight");
  build->add_option("--auto-lambda", build_args.auto_lambda_b, "pick lambda; argument is b");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "estimate counts by uniform sampling");
  sample->add_option("graph", sample_args.graph_path)->required();
  sample->add_option("--tables", sample_args.tables_dir);
  sample->add_option("--k", sample_args.k);
  sample->add_option("--samples", sample_args.samples);
  sample->add_option("--time-budget", sample_args.time_budget, "seconds");
  sample->add_option("--colorings", sample_args.colorings);
  sample->add_option("--seed", sample_args.seed);
  sample->add_option("--threads", sample_args.threads);
  sample->add_option("--out", sample_args.out_path);
  sample->add_option("--sigma-cache", sample_args.sigma_cache, "spanning-profile sidecar");
  sample->add_flag("--json", sample_args.json);

  AgsArgs ags_args;
  auto* ags = app.add_subcommand("ags", "adaptive graphlet sampling");
  ags->add_option("graph", ags_args.graph_path)->required();
  ags->add_option("--tables", ags_args.tables_dir);
  ags->add_option("--k", ags_args.k);
  ags->add_option("--epsilon", ags_args.epsilon);
  ags->add_option("--delta", ags_args.delta);
  ags->add_option("--cbar", ags_args.cbar_value);
  ags->add_option("--max-samples", ags_args.max_samples);
  ags->add_option("--seed", ags_args.seed);
  ags->add_option("--threads", ags_args.threads);
  ags->add_option("--out", ags_args.out_path);
  ags->add_option("--diag", ags_args.diag_path);
  ags->add_option("--sigma-cache", ags_args.sigma_cache, "spanning-profile sidecar");
  ags->add_flag("--json", ags_args.json);

  int exact_k = 5;
  u64 exact_budget = 200000000;
  auto* exact = app.add_subcommand("exact", "exhaustive census (small graphs)");
  exact->add_option("graph", graph_path)->required();
  exact->add_option("--k", exact_k)->required();
  exact->add_option("--out", out_path);
  exact->add_option("--max-subgraphs", exact_budget);

  std::string est_path;
  auto* metrics = app.add_subcommand("metrics", "score estimates against a census");
  metrics->add_option("--estimates", est_path)->required();
  metrics->add_option("--truth", truth_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) return cmd_convert(in_path, out_path);
    if (build->parsed()) return cmd_build(build_args);
    if (sample->parsed()) return cmd_sample(sample_args);
    if (ags->parsed()) return cmd_ags(ags_args);
    if (exact->parsed()) return cmd_exact(graph_path, exact_k, out_path, exact_budget);
    if (metrics->parsed()) return cmd_metrics(est_path, truth_path);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
