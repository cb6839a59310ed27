#include "knncut/cli.hpp"

#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "knncut/continuum.hpp"
#include "knncut/cut_solvers.hpp"
#include "knncut/errors.hpp"
#include "knncut/experiments.hpp"
#include "knncut/io.hpp"
#include "knncut/knn_graph.hpp"
#include "knncut/transport.hpp"

namespace knncut {

namespace {

void emit(std::ostream& out, const std::string& path, const Json& j) {
  if (path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_text(path, j.dump(2) + "\n");
  }
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Json summary_json(const ExperimentResult& r) {
  Json rows = Json::array();
  for (const SummaryRow& s : r.summary) {
    Json j;
    j["n"] = s.n;
    j["k"] = s.k;
    j["trials"] = s.trials;
    j["failures"] = s.failures;
    j["median_value"] = s.value.median;
    j["median_tl1"] = s.tl1.median;
    j["median_deviation"] = s.deviation.median;
    rows.push_back(j);
  }
  Json j;
  j["name"] = r.config.name;
  j["k_rule"] = r.config.k_rule.label();
  j["target"] = r.target;
  j["summary"] = rows;
  return j;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cheeger cuts of k-NN graphs on point clouds and their continuum limits", "knncut"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "knncut 1.0");

  // sample
  std::string domain_arg = "square", density_arg = "uniform", out_path;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Draw i.i.d. points from a density on a domain");
  sample_cmd->add_option("--domain", domain_arg,
                         "square | cube | box:L1,...,Ld | disk:R | ball:d,R | dumbbell:L1,...,Ld,neck_length,neck_width "
                         "(lengths in domain units)")
      ->capture_default_str();
  sample_cmd->add_option("--density", density_arg, "uniform | bump:a with |a| < 1")->capture_default_str();
  sample_cmd->add_option("--n", n, "number of points")->required()->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  sample_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample_cmd->add_option("--out", out_path, "CSV path; a manifest is written next to it as <out>.json");

  // graph
  std::string cloud_path;
  int k = 0;
  double eps = 0.0;
  bool eps_connect = false;
  auto* graph_cmd = app.add_subcommand("graph", "Build a k-NN or eps-graph on a point cloud");
  graph_cmd->add_option("--cloud", cloud_path, "point cloud CSV (with its .json manifest)")->required();
  auto* k_opt = graph_cmd->add_option("--k", k, "neighbours per point (symmetrized k-NN)")->check(CLI::PositiveNumber);
  auto* eps_opt = graph_cmd->add_option("--eps", eps, "connection radius in domain units (eps-graph)")
                      ->check(CLI::PositiveNumber);
  auto* conn_opt = graph_cmd->add_flag("--eps-connect", eps_connect, "eps-graph with the smallest connecting radius");
  k_opt->excludes(eps_opt)->excludes(conn_opt);
  eps_opt->excludes(conn_opt);
  graph_cmd->add_option("--out", out_path, "edge-list CSV path; the header goes to <out>.json");

  // cut
  std::string graph_path, method = "auto";
  auto* cut_cmd = app.add_subcommand("cut", "Minimize the graph Cheeger cut");
  cut_cmd->add_option("--graph", graph_path, "k-NN graph edge list (with its .json header)")->required();
  cut_cmd->add_option("--method", method, "exact (n <= 24) | spectral | auto")
      ->check(CLI::IsMember({"exact", "spectral", "auto"}))
      ->capture_default_str();
  cut_cmd->add_option("--out", out_path, "JSON report path");

  // continuum
  std::string family = "line", scan_path;
  int resolution = 64;
  auto* cont_cmd = app.add_subcommand("continuum", "Minimize the weighted Cheeger ratio over a cut family");
  cont_cmd->add_option("--domain", domain_arg, "domain spec, as for sample")->capture_default_str();
  cont_cmd->add_option("--density", density_arg, "density spec, as for sample")->capture_default_str();
  cont_cmd->add_option("--family", family, "line (hyperplanes) | neck (vertical cuts of a dumbbell neck)")
      ->check(CLI::IsMember({"line", "neck", "vertical_neck"}))
      ->capture_default_str();
  cont_cmd->add_option("--resolution", resolution, "grid points per scan axis")
      ->check(CLI::Range(4, 4096))
      ->capture_default_str();
  cont_cmd->add_option("--out", out_path, "JSON report path");
  cont_cmd->add_option("--scan", scan_path, "CSV of the (theta, offset, value) scan");

  // tl1
  std::string partition_path, cut_path, plan_path;
  int m = 0;
  auto* tl1_cmd = app.add_subcommand("tl1", "TL1 distance between a discrete partition and a continuum cut");
  tl1_cmd->add_option("--cloud", cloud_path, "point cloud CSV")->required();
  tl1_cmd->add_option("--partition", partition_path, "partition JSON, or a cut report holding one")->required();
  tl1_cmd->add_option("--continuum-cut", cut_path, "cut JSON, or a continuum report (all co-minimizers are used)")
      ->required();
  tl1_cmd->add_option("--m", m, "quantization atoms (default 4n)")->check(CLI::Range(1, 10000000));
  tl1_cmd->add_option("--out", out_path, "JSON result path");
  tl1_cmd->add_option("--plan", plan_path, "CSV of the optimal plan (src,dst,mass,displacement)");

  // experiment
  std::string config_path, out_dir;
  int threads = 0;
  bool progress = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a convergence study (or a k-rule sweep with \"k_rules\")");
  exp_cmd->add_option("--config", config_path, "experiment JSON config")->required();
  exp_cmd->add_option("--out-dir", out_dir, "output directory")->required();
  exp_cmd->add_option("--threads", threads, "worker threads (default: $KNNCUT_THREADS or all cores)")
      ->check(CLI::Range(1, 1024));
  exp_cmd->add_flag("--progress", progress, "print one line per finished trial to stderr");

  // figures
  std::uint64_t fig_seed = 7;
  std::string fig_dir = "figures";
  auto* fig_cmd = app.add_subcommand("figures", "Dumbbell figures: sample, graph, discrete and continuum cuts, eps-graph");
  fig_cmd->add_option("--out-dir", fig_dir, "output directory")->capture_default_str();
  fig_cmd->add_option("--seed", fig_seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) {
      const Domain domain = parse_domain(domain_arg);
      const PointCloud cloud = sample(domain, parse_density(domain, density_arg), n, seed);
      if (out_path.empty()) {
        Json j;
        j["manifest"] = cloud_manifest(cloud);
        Json pts = Json::array();
        for (std::size_t i = 0; i < cloud.size(); ++i) pts.push_back(std::vector<double>(cloud.point(i).begin(), cloud.point(i).end()));
        j["points"] = pts;
        out << j.dump(2) << "\n";
      } else {
        write_cloud(out_path, cloud);
      }
    } else if (graph_cmd->parsed()) {
      if (k_opt->count() + eps_opt->count() + (eps_connect ? 1 : 0) != 1) {
        err << "graph: give exactly one of --k, --eps, --eps-connect\n" << graph_cmd->help();
        return kExitUsage;
      }
      const PointCloud cloud = read_cloud(cloud_path);
      Graph g;
      Json header;
      if (k_opt->count()) {
        const KnnGraph kg = build_knn(cloud, k);
        header = knn_graph_header(kg);
        g = kg.graph();
      } else {
        const EpsGraph eg = build_eps(cloud, eps_connect ? min_connecting_eps(cloud) : eps);
        header = eps_graph_header(eg, cloud.dim);
        g = eg.graph;
      }
      if (out_path.empty()) {
        Json j;
        j["header"] = header;
        Json edges = Json::array();
        for (auto [i, jj] : g.edges()) edges.push_back({i, jj});
        j["edges"] = edges;
        out << j.dump(2) << "\n";
      } else {
        write_graph(out_path, g, header);
      }
    } else if (cut_cmd->parsed()) {
      const KnnGraph g = read_knn_graph(graph_path);
      SolverReport rep;
      if (method == "exact") {
        rep = solve_exact(g);
      } else if (method == "spectral") {
        rep = solve_spectral(g);
      } else {
        rep = solve(g);
      }
      emit(out, out_path, solver_report_to_json(rep));
    } else if (cont_cmd->parsed()) {
      const Domain domain = parse_domain(domain_arg);
      const Density density = parse_density(domain, density_arg);
      const ContinuumReport rep = minimize_continuum(domain, density, parse_cut_family(family), resolution);
      if (!scan_path.empty()) write_text(scan_path, scan_csv(rep));
      emit(out, out_path, continuum_report_to_json(rep, domain, density));
    } else if (tl1_cmd->parsed()) {
      const PointCloud cloud = read_cloud(cloud_path);
      const Partition part = partition_from_json(read_json(partition_path));
      const std::vector<ContinuumCut> cuts = continuum_cuts_from_json(read_json(cut_path));
      const int atoms_wanted = m > 0 ? m : static_cast<int>(4 * cloud.size());
      const DiscreteMeasure atoms = quantize(cloud.domain, cloud.density, atoms_wanted, QuantizeScheme::grid);
      TransportOptions opt;
      opt.allow_sparse_pricing = true;
      const Tl1Comparison cmp = tl1_min_over_cuts(cloud, part, atoms, cloud.domain, cuts, opt);
      Json j;
      j["distance"] = cmp.distance;
      j["complemented"] = cmp.complemented;
      j["cut_index"] = cmp.cut_index;
      j["cut"] = continuum_cut_to_json(cuts[cmp.cut_index]);
      j["atoms"] = cmp.atoms;
      j["solves"] = cmp.solves;
      if (!plan_path.empty()) {
        const DiscreteMeasure mu = DiscreteMeasure::empirical(cloud);
        GraphFunction u = part.indicator();
        if (cmp.complemented)
          for (double& x : u) x = 1.0 - x;
        std::vector<double> v(atoms.size());
        for (int a = 0; a < atoms.size(); ++a) v[a] = continuum_indicator(cloud.domain, cuts[cmp.cut_index], atoms.point(a));
        write_text(plan_path, plan_csv(tl1_distance(mu, u, atoms, v, opt), mu, atoms));
      }
      emit(out, out_path, j);
    } else if (exp_cmd->parsed()) {
      const Json cfg_json = read_json(config_path);
      const ExperimentConfig cfg = config_from_json(cfg_json);
      ProgressFn report;
      if (progress) {
        report = [&err](const TrialRow& r) {
          err << "n=" << r.n << " trial=" << r.trial << (r.failed ? " failed: " + r.failure : " value=" + format_double(r.discrete_value))
              << "\n";
        };
      }
      Json summary;
      if (cfg_json.contains("k_rules")) {
        std::vector<KRule> rules;
        for (const Json& r : cfg_json.at("k_rules")) rules.push_back(k_rule_from_json(r, default_k_rule(cfg.domain.dim())));
        const SweepResult sweep = scaling_sweep(cfg, rules, threads, report);
        for (const ExperimentResult& r : sweep.runs)
          for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
        write_sweep(sweep, out_dir);
        summary = Json::array();
        for (const ExperimentResult& r : sweep.runs) summary.push_back(summary_json(r));
      } else {
        const ExperimentResult res = run_experiment(cfg, threads, report);
        for (const std::string& w : res.warnings) err << "warning: " << w << "\n";
        write_experiment(res, out_dir);
        summary = summary_json(res);
      }
      out << summary.dump(2) << "\n";
    } else if (fig_cmd->parsed()) {
      const FigureReport rep = reproduce_figures(fig_dir, fig_seed);
      Json j;
      j["files"] = rep.files;
      j["cheeger_value"] = rep.discrete.best_result.cheeger_value;
      j["method"] = to_string(rep.discrete.method);
      j["left_lobe_purity"] = rep.left_purity;
      j["right_lobe_purity"] = rep.right_purity;
      j["neck_cut"] = continuum_cut_to_json(rep.neck_cut);
      j["eps"] = rep.eps;
      j["knn_degree_cv"] = rep.knn_degrees.coefficient_of_variation;
      j["eps_degree_cv"] = rep.eps_degrees.coefficient_of_variation;
      out << j.dump(2) << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace knncut
