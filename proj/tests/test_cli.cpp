#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "knncut/cli.hpp"
#include "knncut/cut_solvers.hpp"
#include "knncut/io.hpp"
#include "knncut/transport.hpp"

using namespace knncut;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "knncut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("knncut_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"sample", "--n", "10", "--bogus"}).code == kExitUsage);
  CHECK(cli({"sample"}).code == kExitUsage);
  CHECK(cli({"sample", "--n", "0"}).code == kExitUsage);
  CHECK(cli({"sample", "--n", "ten"}).code == kExitUsage);
  CHECK(cli({"cut", "--graph", "g.csv", "--method", "annealing"}).code == kExitUsage);
  CHECK(cli({"graph", "--cloud", "c.csv", "--k", "3", "--eps", "0.1"}).code == kExitUsage);
  CHECK(cli({"graph", "--cloud", "c.csv"}).code == kExitUsage);
  for (const char* sub : {"sample", "graph", "cut", "continuum", "tl1", "experiment", "figures"}) {
    const Run r = cli({sub, "--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  CHECK(cli({"sample", "--help"}).out.find("[square]") != std::string::npos);
}

TEST_CASE("sample -> graph -> cut -> continuum -> tl1") {
  const std::string dir = scratch("pipeline");
  const std::string c = dir + "/c.csv", g = dir + "/g.csv", r = dir + "/r.json", k = dir + "/cont.json";
  REQUIRE(cli({"sample", "--n", "12", "--seed", "5", "--out", c}).code == 0);
  const PointCloud cloud = read_cloud(c);
  CHECK(cloud.coords == sample(Domain::unit_square(), Density::uniform(Domain::unit_square()), 12, 5).coords);

  REQUIRE(cli({"graph", "--cloud", c, "--k", "4", "--out", g}).code == 0);
  const KnnGraph graph = read_knn_graph(g);
  CHECK(graph.graph() == build_knn(cloud, 4).graph());

  const Run cut = cli({"cut", "--graph", g, "--method", "exact"});
  REQUIRE(cut.code == 0);
  const Json rep = Json::parse(cut.out);
  CHECK(rep.at("method") == "exact");
  const SolverReport direct = solve_exact(graph);
  CHECK(rep.at("result").at("cheeger_value").get<double>() == direct.best_result.cheeger_value);
  CHECK(partition_from_json(rep) == direct.best);
  write_text(r, cut.out);

  REQUIRE(cli({"continuum", "--domain", "square", "--resolution", "16", "--out", k, "--scan", dir + "/scan.csv"}).code == 0);
  const Json cont = Json::parse(read_text(k));
  CHECK(cont.at("co_minimizers").size() == 2);
  CHECK(std::filesystem::exists(dir + "/scan.csv"));

  const Run t = cli({"tl1", "--cloud", c, "--partition", r, "--continuum-cut", k, "--plan", dir + "/plan.csv"});
  REQUIRE(t.code == 0);
  const Json tj = Json::parse(t.out);
  const DiscreteMeasure atoms = quantize(cloud.domain, cloud.density, 48, QuantizeScheme::grid);
  const auto cuts = continuum_cuts_from_json(cont);
  CHECK(tj.at("distance").get<double>() == tl1_min_over_cuts(cloud, direct.best, atoms, cloud.domain, cuts).distance);
  CHECK(read_text(dir + "/plan.csv").rfind("src,dst,mass,displacement\n", 0) == 0);

  const Run eg = cli({"graph", "--cloud", c, "--eps-connect"});
  REQUIRE(eg.code == 0);
  CHECK(Json::parse(eg.out).at("header").at("eps").get<double>() == min_connecting_eps(cloud));
}

TEST_CASE("domain errors exit 1") {
  const std::string dir = scratch("errors");
  const std::string c = dir + "/c.csv";
  REQUIRE(cli({"sample", "--n", "30", "--seed", "1", "--out", c}).code == 0);
  CHECK(cli({"graph", "--cloud", c, "--k", "30"}).code == kExitDomainError);
  CHECK(cli({"graph", "--cloud", dir + "/nothing.csv", "--k", "3"}).code == kExitDomainError);
  CHECK(cli({"sample", "--n", "5", "--domain", "ball:1,1"}).code == kExitDomainError);

  REQUIRE(cli({"graph", "--cloud", c, "--k", "5", "--out", dir + "/g.csv"}).code == 0);
  const Run budget = cli({"cut", "--graph", dir + "/g.csv", "--method", "exact"});
  CHECK(budget.code == kExitDomainError);
  CHECK(budget.err.find("24") != std::string::npos);

  // Two disjoint edges.
  write_text(dir + "/split.csv", "i,j\n0,1\n2,3\n");
  write_text(dir + "/split.csv.json", R"({"n":4,"dim":2,"k":1,"eps_bar":0.5})");
  CHECK(cli({"cut", "--graph", dir + "/split.csv", "--method", "spectral"}).code == kExitDomainError);
  CHECK(cli({"cut", "--graph", dir + "/split.csv", "--method", "auto"}).code == kExitDomainError);
}

TEST_CASE("figures are deterministic") {
  const std::string a = scratch("figa"), b = scratch("figb");
  const Run ra = cli({"figures", "--out-dir", a, "--seed", "7"});
  const Run rb = cli({"figures", "--out-dir", b, "--seed", "7"});
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  const Json j = Json::parse(ra.out);
  REQUIRE(j.at("files").size() == 5);
  for (const auto& f : j.at("files")) {
    const std::string name = std::filesystem::path(f.get<std::string>()).filename().string();
    CHECK(read_text(a + "/" + name) == read_text(b + "/" + name));
  }
  CHECK(j.at("left_lobe_purity").get<double>() >= 0.9);
}

TEST_CASE("experiment writes one row per trial") {
  const std::string dir = scratch("experiment");
  write_text(dir + "/square_d2.json",
             R"({"name":"square_d2","domain":"square","d":2,"n_list":[60,90,120],"trials":2,"base_seed":3,"resolution":16})");
  const Run r = cli({"experiment", "--config", dir + "/square_d2.json", "--out-dir", dir + "/out", "--threads", "2"});
  REQUIRE(r.code == 0);
  const std::string trials = read_text(dir + "/out/trials.csv");
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 1 + 3 * 2);
  CHECK(Json::parse(r.out).at("summary").size() == 3);

  write_text(dir + "/clog.json", R"({"n_list":[80],"trials":1,"k_rule":"c_log","tl1":false,"resolution":16})");
  const Run w = cli({"experiment", "--config", dir + "/clog.json", "--out-dir", dir + "/clog"});
  CHECK(w.code == 0);
  CHECK(w.err.find("warning") != std::string::npos);

  write_text(dir + "/sweep.json",
             R"({"n_list":[80],"trials":1,"k_rules":[{"rule":"constant","c":4},"c_log32"],"tl1":false,"resolution":16})");
  CHECK(cli({"experiment", "--config", dir + "/sweep.json", "--out-dir", dir + "/sweep"}).code == 0);
  CHECK(std::filesystem::exists(dir + "/sweep/sweep.csv"));

  write_text(dir + "/bad.json", R"({"n_list":[10],"k_rule":{"rule":"constant","c":20}})");
  CHECK(cli({"experiment", "--config", dir + "/bad.json", "--out-dir", dir + "/bad"}).code == kExitDomainError);

  setenv("KNNCUT_THREADS", "zero", 1);
  CHECK(cli({"experiment", "--config", dir + "/clog.json", "--out-dir", dir + "/env"}).code == kExitDomainError);
  CHECK(cli({"experiment", "--config", dir + "/clog.json", "--out-dir", dir + "/env", "--threads", "1"}).code == 0);
  unsetenv("KNNCUT_THREADS");
}
