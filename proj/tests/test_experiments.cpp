#include <filesystem>

#include "doctest.h"
#include "knncut/errors.hpp"
#include "knncut/experiments.hpp"
#include "knncut/rng.hpp"

using namespace knncut;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("knncut_exp_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.name = "small";
  c.n_list = {120, 250};
  c.trials = 3;
  c.base_seed = 11;
  c.continuum_resolution = 24;
  return c;
}

}  // namespace

TEST_CASE("k rules") {
  CHECK(KRule{KRuleKind::c_log, 2.0}.k(1000) == 14);         // 2 * 6.908
  CHECK(KRule{KRuleKind::c_log32, 1.0}.k(4000) == 24);       // 8.294^1.5 = 23.89
  CHECK(KRule{KRuleKind::c_log32, 1.0}.k(250) == 13);        // 5.521^1.5 = 12.97
  CHECK(KRule{KRuleKind::c_pow, 1.0, 0.5}.k(250) == 16);     // 15.81
  CHECK(KRule{KRuleKind::constant, 3.0}.k(4000) == 3);
  for (auto k : {KRuleKind::c_log, KRuleKind::c_log32, KRuleKind::c_pow, KRuleKind::constant}) {
    CHECK(parse_k_rule(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_k_rule("sqrt"), ArgumentError);
  CHECK(default_k_rule(2).kind == KRuleKind::c_log32);
  CHECK(default_k_rule(3).kind == KRuleKind::c_log);
  const KRule r = k_rule_from_json(Json::parse(R"({"rule":"c_pow","c":2,"gamma":0.3})"), {});
  CHECK(r.kind == KRuleKind::c_pow);
  CHECK(r.c == 2.0);
  CHECK(r.gamma == 0.3);
}

TEST_CASE("quartiles") {
  const Quartiles q = quartiles({4, 1, 3, 2});
  CHECK(q.q1 == doctest::Approx(1.75));
  CHECK(q.median == doctest::Approx(2.5));
  CHECK(q.q3 == doctest::Approx(3.25));
  CHECK(quartiles({5.0, std::nan("")}).median == 5.0);
  CHECK(std::isnan(quartiles({}).median));
}

TEST_CASE("config parsing and validation") {
  const ExperimentConfig c = config_from_json(Json::parse(R"({"domain":"ball:3,1","n_list":[300]})"));
  CHECK(c.domain.dim() == 3);
  CHECK(c.k_rule.kind == KRuleKind::c_log);
  const ExperimentConfig back = config_from_json(config_to_json(small_config()));
  CHECK(back.n_list == small_config().n_list);
  CHECK(back.k_rule.kind == KRuleKind::c_log32);
  CHECK(config_to_json(back) == config_to_json(small_config()));
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"d":3})")), ConfigurationError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"colour":"red"})")), FormatError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"n_list":[10],"k_rule":{"rule":"constant","c":10}})")),
                  ConfigurationError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"k_rule":{"rule":"c_pow","gamma":1.5}})")), ConfigurationError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"family":"neck"})")), ConfigurationError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"n_list":[100,100]})")), ConfigurationError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"trials":"many"})")), FormatError);
}

TEST_CASE("a single trial is reproducible by seed") {
  ExperimentConfig c = small_config();
  c.n_list = {250};
  c.trials = 1;
  const ExperimentResult a = run_experiment(c, 1);
  REQUIRE(a.rows.size() == 1);
  const TrialRow& r = a.rows[0];
  CHECK(r.seed == derive_seed(11, 250, 0));
  CHECK(r.k == 13);
  CHECK_FALSE(r.failed);
  CHECK(r.discrete_value > 0.0);
  CHECK(r.tl1_to_continuum > 0.0);
  CHECK(r.tl1_to_continuum < 1.0);
  CHECK(r.method == "spectral_sweep_refined");
  CHECK(trials_csv(run_experiment(c, 1)) == trials_csv(a));
}

TEST_CASE("results do not depend on the thread count") {
  const ExperimentConfig c = small_config();
  const ExperimentResult one = run_experiment(c, 1);
  const ExperimentResult three = run_experiment(c, 3);
  CHECK(trials_csv(one) == trials_csv(three));
  CHECK(summary_csv(one) == summary_csv(three));
  REQUIRE(one.rows.size() == 6);
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].n == c.n_list[i / 3]);
    CHECK(one.rows[i].trial == static_cast<int>(i % 3));
  }
  REQUIRE(one.summary.size() == 2);
  for (const SummaryRow& s : one.summary) {
    CHECK(s.trials == 3);
    CHECK(std::isfinite(s.value.median));
    CHECK(s.value.median > 0.0);
    CHECK(s.target == doctest::Approx(0.4789).epsilon(1e-3));
  }
  CHECK(one.warnings.empty());
}

TEST_CASE("failed trials are recorded and counted") {
  ExperimentConfig c = small_config();
  c.n_list = {300};
  c.trials = 4;
  c.k_rule = {KRuleKind::constant, 1.0};
  c.compute_tl1 = false;
  const ExperimentResult r = run_experiment(c, 1);
  REQUIRE(r.rows.size() == 4);
  int failed = 0;
  for (const TrialRow& t : r.rows) {
    if (!t.failed) continue;
    ++failed;
    CHECK(t.failure.find("disconnected") != std::string::npos);
    CHECK(t.discrete_value == 0.0);
    CHECK(t.method == "none");
  }
  CHECK(failed == 4);
  CHECK(r.summary[0].failures == 4);
  CHECK(r.summary[0].trials == 0);
  CHECK(std::isnan(r.summary[0].value.median));
  CHECK(trials_csv(r).find("failed,disconnected graph") != std::string::npos);
}

TEST_CASE("c_log in two dimensions warns") {
  ExperimentConfig c = small_config();
  c.n_list = {120};
  c.trials = 1;
  c.compute_tl1 = false;
  c.k_rule = {KRuleKind::c_log, 2.0};
  CHECK(run_experiment(c, 1).warnings.size() == 1);
  c.domain = Domain::box({1, 1, 1});
  c.density = Density::uniform(c.domain);
  CHECK(run_experiment(c, 1).warnings.empty());
}

TEST_CASE("experiment output files") {
  const auto dir = scratch("out");
  const ExperimentConfig c = small_config();
  const ExperimentResult r = run_experiment(c, 2);
  write_experiment(r, dir.string());
  for (const char* f : {"trials.csv", "timings.csv", "summary.csv", "config.json", "value_vs_n.svg", "tl1_vs_n.svg"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const std::string trials = read_text((dir / "trials.csv").string());
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 1 + 6);
  const Json cfg = Json::parse(read_text((dir / "config.json").string()));
  CHECK(cfg.at("d") == 2);
  CHECK(cfg.at("k_rule").at("rule") == "c_log32");
  CHECK(cfg.at("k_values").at("250") == 13);

  const auto again = scratch("out2");
  write_experiment(run_experiment(c, 1), again.string());
  for (const char* f : {"trials.csv", "summary.csv", "config.json", "value_vs_n.svg", "tl1_vs_n.svg"}) {
    CHECK(read_text((dir / f).string()) == read_text((again / f).string()));
  }
}

TEST_CASE("scaling sweep") {
  ExperimentConfig c = small_config();
  c.compute_tl1 = false;
  const SweepResult single = scaling_sweep(c, {c.k_rule}, 1);
  REQUIRE(single.runs.size() == 1);
  CHECK(trials_csv(single.runs[0]) == trials_csv(run_experiment(c, 1)));

  const SweepResult two = scaling_sweep(c, {KRule{KRuleKind::constant, 4.0}, c.k_rule}, 1);
  REQUIRE(two.runs.size() == 2);
  CHECK(two.runs[0].summary[0].k == 4);
  const std::string csv = sweep_csv(two);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4);
  const auto dir = scratch("sweep");
  write_sweep(two, dir.string());
  CHECK(std::filesystem::exists(dir / "sweep.csv"));
  CHECK(std::filesystem::exists(dir / "deviation_vs_n.svg"));
  CHECK(std::filesystem::exists(dir / "rule0_constant" / "trials.csv"));
  CHECK_THROWS_AS(scaling_sweep(c, {}, 1), ArgumentError);
}

TEST_CASE("dumbbell figures") {
  const auto d1 = scratch("fig1"), d2 = scratch("fig2");
  const FigureReport a = reproduce_figures(d1.string(), 7);
  const FigureReport b = reproduce_figures(d2.string(), 7);
  REQUIRE(a.files.size() == 5);
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(read_text(a.files[i]) == read_text(b.files[i]));
    CHECK(read_text(a.files[i]).rfind("<svg", 0) == 0);
  }
  CHECK(a.cloud.size() == 120);
  CHECK(a.left_purity >= 0.9);
  CHECK(a.right_purity >= 0.9);
  CHECK(a.neck_cut.family == CutFamily::vertical_neck);
  CHECK(a.neck_cut.offset > 1.0);
  CHECK(a.neck_cut.offset < 1.5);
  CHECK(a.eps == min_connecting_eps(a.cloud));
  CHECK(a.knn_degrees.coefficient_of_variation < a.eps_degrees.coefficient_of_variation);
}
