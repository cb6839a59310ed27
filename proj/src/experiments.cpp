#include "knncut/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "knncut/errors.hpp"
#include "knncut/functionals.hpp"
#include "knncut/graph.hpp"
#include "knncut/knn_graph.hpp"
#include "knncut/rng.hpp"
#include "knncut/transport.hpp"
#include "svg.hpp"

namespace knncut {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double x) { return std::isnan(x) ? "nan" : format_double(x); }

}  // namespace

// ---------------------------------------------------------------------------
// k rules

std::string to_string(KRuleKind kind) {
  switch (kind) {
    case KRuleKind::c_log: return "c_log";
    case KRuleKind::c_log32: return "c_log32";
    case KRuleKind::c_pow: return "c_pow";
    case KRuleKind::constant: return "constant";
  }
  return {};
}

KRuleKind parse_k_rule(const std::string& name) {
  for (KRuleKind k : {KRuleKind::c_log, KRuleKind::c_log32, KRuleKind::c_pow, KRuleKind::constant}) {
    if (name == to_string(k)) return k;
  }
  throw ArgumentError("unknown k rule '" + name + "' (c_log | c_log32 | c_pow | constant)");
}

KRule k_rule_from_json(const Json& j, KRule base) {
  try {
    if (j.is_string()) {
      base.kind = parse_k_rule(j.get<std::string>());
      return base;
    }
    if (!j.is_object() || !j.contains("rule")) throw FormatError("k rule must be a name or an object with \"rule\"");
    base.kind = parse_k_rule(j.at("rule").get<std::string>());
    base.c = j.value("c", base.c);
    base.gamma = j.value("gamma", base.gamma);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("k rule: ") + e.what());
  }
  return base;
}

Json k_rule_to_json(const KRule& rule) {
  Json r;
  r["rule"] = to_string(rule.kind);
  r["c"] = rule.c;
  if (rule.kind == KRuleKind::c_pow) r["gamma"] = rule.gamma;
  return r;
}

KRule default_k_rule(int d) { return {d == 2 ? KRuleKind::c_log32 : KRuleKind::c_log, 1.0, 0.5}; }

int KRule::k(int n) const {
  const double ln = std::log(static_cast<double>(n));
  switch (kind) {
    case KRuleKind::c_log: return static_cast<int>(std::ceil(c * ln));
    case KRuleKind::c_log32: return static_cast<int>(std::ceil(c * std::pow(ln, 1.5)));
    case KRuleKind::c_pow: return static_cast<int>(std::ceil(c * std::pow(static_cast<double>(n), gamma)));
    case KRuleKind::constant: return static_cast<int>(c);
  }
  return 0;
}

std::string KRule::label() const {
  switch (kind) {
    case KRuleKind::c_log: return "k=ceil(" + format_double(c) + " log n)";
    case KRuleKind::c_log32: return "k=ceil(" + format_double(c) + " (log n)^1.5)";
    case KRuleKind::c_pow: return "k=ceil(" + format_double(c) + " n^" + format_double(gamma) + ")";
    case KRuleKind::constant: return "k=" + format_double(c);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Config

namespace {

void validate(const ExperimentConfig& c) {
  if (c.n_list.empty()) throw ConfigurationError("n_list is empty");
  if (c.trials < 1) throw ConfigurationError("trials must be >= 1");
  if (!(c.k_rule.c > 0.0)) throw ConfigurationError("k rule constant c must be positive");
  if (c.k_rule.kind == KRuleKind::c_pow && !(c.k_rule.gamma > 0.0 && c.k_rule.gamma < 1.0)) {
    throw ConfigurationError("c_pow needs 0 < gamma < 1");
  }
  if (c.k_rule.kind == KRuleKind::constant && c.k_rule.c != std::floor(c.k_rule.c)) {
    throw ConfigurationError("constant k rule needs an integer c");
  }
  if (c.continuum_resolution < 4) throw ConfigurationError("continuum resolution must be >= 4");
  if (c.atoms_per_point < 1) throw ConfigurationError("atoms_per_point must be >= 1");
  if (c.family == CutFamily::vertical_neck && c.domain.shape() != Shape::dumbbell) {
    throw ConfigurationError("the neck family needs a dumbbell domain");
  }
  std::set<int> seen;
  for (int n : c.n_list) {
    if (n < 2) throw ConfigurationError("every n must be >= 2");
    if (!seen.insert(n).second) throw ConfigurationError("n_list repeats " + std::to_string(n));
    const int k = c.k_rule.k(n);
    if (k < 1 || k >= n) {
      throw ConfigurationError(c.k_rule.label() + " gives k=" + std::to_string(k) + " at n=" + std::to_string(n) +
                               "; need 1 <= k < n");
    }
  }
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  static const std::set<std::string> known{"name",  "domain",    "density", "d",          "n_list",
                                           "k_rule", "c",        "gamma",   "trials",     "base_seed",
                                           "family", "resolution", "atoms_per_point", "tl1", "exact_max_n", "k_rules"};
  if (!j.is_object()) throw FormatError("experiment config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw FormatError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.domain = domain_from_json(j.value("domain", Json("square")));
    c.density = density_from_json(c.domain, j.value("density", Json("uniform")));
    if (j.contains("d") && j.at("d").get<int>() != c.domain.dim()) {
      throw ConfigurationError("config d=" + std::to_string(j.at("d").get<int>()) + " but the domain has dimension " +
                               std::to_string(c.domain.dim()));
    }
    if (j.contains("n_list")) c.n_list = j.at("n_list").get<std::vector<int>>();
    c.k_rule = default_k_rule(c.domain.dim());
    if (j.contains("k_rule")) c.k_rule = k_rule_from_json(j.at("k_rule"), c.k_rule);
    c.k_rule.c = j.value("c", c.k_rule.c);
    c.k_rule.gamma = j.value("gamma", c.k_rule.gamma);
    c.trials = j.value("trials", c.trials);
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("family")) c.family = parse_cut_family(j.at("family").get<std::string>());
    c.continuum_resolution = j.value("resolution", c.continuum_resolution);
    c.atoms_per_point = j.value("atoms_per_point", c.atoms_per_point);
    c.compute_tl1 = j.value("tl1", c.compute_tl1);
    c.exact_max_n = j.value("exact_max_n", c.exact_max_n);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("experiment config: ") + e.what());
  }
  validate(c);
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["name"] = c.name;
  j["domain"] = domain_spec(c.domain);
  j["density"] = density_spec(c.density);
  j["d"] = c.domain.dim();
  j["n_list"] = c.n_list;
  j["k_rule"] = k_rule_to_json(c.k_rule);
  j["trials"] = c.trials;
  j["base_seed"] = c.base_seed;
  j["family"] = to_string(c.family);
  j["resolution"] = c.continuum_resolution;
  j["atoms_per_point"] = c.atoms_per_point;
  j["tl1"] = c.compute_tl1;
  j["exact_max_n"] = c.exact_max_n;
  return j;
}

// ---------------------------------------------------------------------------
// Running

Quartiles quartiles(std::vector<double> v) {
  std::erase_if(v, [](double x) { return std::isnan(x); });
  if (v.empty()) return {kNaN, kNaN, kNaN};
  std::sort(v.begin(), v.end());
  auto at = [&](double p) {
    const double pos = p * (v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - lo) * (v[hi] - v[lo]);
  };
  return {at(0.25), at(0.5), at(0.75)};
}

int default_thread_count() {
  if (const char* env = std::getenv("KNNCUT_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) throw ConfigurationError("KNNCUT_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Prepared {
  int n;
  int k;
  DiscreteMeasure atoms;
};

TrialRow run_trial(const ExperimentConfig& c, const Prepared& p, int trial, const ContinuumReport& cont) {
  const auto start = std::chrono::steady_clock::now();
  TrialRow row;
  row.n = p.n;
  row.k = p.k;
  row.trial = trial;
  row.seed = derive_seed(c.base_seed, static_cast<std::uint64_t>(p.n), static_cast<std::uint64_t>(trial));
  row.discrete_value = kNaN;
  row.tl1_to_continuum = kNaN;
  try {
    const PointCloud cloud = sample(c.domain, c.density, p.n, row.seed);
    const KnnGraph graph = build_knn(cloud, p.k);
    const std::vector<int> comp = connected_components(graph.graph());
    const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    if (count > 1) {
      // Any component is a zero-cut side, so the exact minimum is 0; the trial still counts as failed.
      row.failed = true;
      row.failure = "disconnected graph (" + std::to_string(count) + " components)";
      row.discrete_value = 0.0;
      row.method = "none";
      row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return row;
    }
    SolveOptions opt;
    opt.exact_max_n = c.exact_max_n;
    const SolverReport report = solve(graph, opt);
    row.discrete_value = report.best_result.cheeger_value;
    row.method = to_string(report.method);
    if (c.compute_tl1) {
      TransportOptions topt;
      topt.allow_sparse_pricing = true;
      row.tl1_to_continuum = tl1_min_over_cuts(cloud, report.best, p.atoms, c.domain, cont.co_minimizers, topt).distance;
    }
  } catch (const Error& e) {
    row.failed = true;
    row.failure = e.what();
    row.method = "none";
    row.discrete_value = kNaN;
    row.tl1_to_continuum = kNaN;
  }
  row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int threads, const ProgressFn& progress) {
  validate(config);
  ExperimentResult res;
  res.config = config;
  if (config.domain.dim() == 2 && config.k_rule.kind == KRuleKind::c_log) {
    res.warnings.push_back(
        "d=2 with k = c log n: in two dimensions convergence needs k to grow faster than (log n)^{3/2}; "
        "consider k_rule c_log32");
  }
  res.continuum = minimize_continuum(config.domain, config.density, config.family, config.continuum_resolution);
  res.target = res.continuum.rescaled_target;

  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<Prepared> prep;
  for (int n : ns) {
    Prepared p{n, config.k_rule.k(n), {}};
    if (config.compute_tl1) {
      p.atoms = quantize(config.domain, config.density, config.atoms_per_point * n, QuantizeScheme::grid);
    }
    prep.push_back(std::move(p));
  }

  // Tasks in (n, trial) order; workers take the largest n first to balance load.
  const int total = static_cast<int>(ns.size()) * config.trials;
  res.rows.resize(total);
  std::vector<int> order(total);
  for (int t = 0; t < total; ++t) order[t] = total - 1 - t;
  const int workers = std::clamp(threads > 0 ? threads : default_thread_count(), 1, std::max(1, total));
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto work = [&] {
    for (int slot = next++; slot < total; slot = next++) {
      const int t = order[slot];
      try {
        TrialRow row = run_trial(config, prep[t / config.trials], t % config.trials, res.continuum);
        std::lock_guard lock(mu);
        res.rows[t] = std::move(row);
        if (progress) progress(res.rows[t]);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < ns.size(); ++i) {
    SummaryRow s;
    s.n = ns[i];
    s.k = prep[i].k;
    s.target = res.target;
    std::vector<double> values, tl1s, devs;
    for (int t = 0; t < config.trials; ++t) {
      const TrialRow& r = res.rows[i * config.trials + t];
      if (r.failed) {
        ++s.failures;
        continue;
      }
      ++s.trials;
      values.push_back(r.discrete_value);
      tl1s.push_back(r.tl1_to_continuum);
      devs.push_back(std::abs(r.discrete_value - res.target) / res.target);
    }
    s.value = quartiles(values);
    s.tl1 = quartiles(tl1s);
    s.deviation = quartiles(devs);
    res.summary.push_back(s);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Output

std::string trials_csv(const ExperimentResult& r) {
  std::string s = "n,k,trial,seed,discrete_value,method,tl1_to_continuum,status,failure\n";
  for (const TrialRow& t : r.rows) {
    s += std::to_string(t.n) + "," + std::to_string(t.k) + "," + std::to_string(t.trial) + "," +
         std::to_string(t.seed) + "," + num(t.discrete_value) + "," + t.method + "," + num(t.tl1_to_continuum) + "," +
         (t.failed ? "failed" : "ok") + "," + csv_field(t.failure) + "\n";
  }
  return s;
}

std::string summary_csv(const ExperimentResult& r) {
  std::string s =
      "n,k,trials,failures,median_value,q1_value,q3_value,median_tl1,q1_tl1,q3_tl1,"
      "median_deviation,q1_deviation,q3_deviation,target\n";
  for (const SummaryRow& m : r.summary) {
    s += std::to_string(m.n) + "," + std::to_string(m.k) + "," + std::to_string(m.trials) + "," +
         std::to_string(m.failures) + "," + num(m.value.median) + "," + num(m.value.q1) + "," + num(m.value.q3) + "," +
         num(m.tl1.median) + "," + num(m.tl1.q1) + "," + num(m.tl1.q3) + "," + num(m.deviation.median) + "," +
         num(m.deviation.q1) + "," + num(m.deviation.q3) + "," + num(m.target) + "\n";
  }
  return s;
}

namespace {

struct Series {
  std::string label;
  std::vector<double> x, y, lo, hi;
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Medians against n on a log axis, with interquartile bars and an optional reference line.
std::string line_plot(const std::string& title, const std::string& ylabel, const std::vector<Series>& series,
                      double reference = kNaN, const std::string& reference_label = "") {
  double xmin = std::numeric_limits<double>::infinity(), xmax = 0.0, ymax = 0.0;
  for (const Series& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      for (double v : {s.y[i], s.hi[i]})
        if (std::isfinite(v)) ymax = std::max(ymax, v);
    }
  }
  if (std::isfinite(reference)) ymax = std::max(ymax, reference);
  if (!(xmin < xmax)) {
    xmin = xmin / 2;
    xmax = xmax * 2;
  }
  if (!(ymax > 0.0)) ymax = 1.0;
  ymax *= 1.15;
  detail::Svg svg(640, 420);
  const detail::View v{xmin / 1.25, xmax * 1.25, 0.0, ymax, 70, 40, 520, 320, true};
  svg.text(320, 24, title, 15, "middle");
  svg.line(v.px, v.py + v.ph, v.px + v.pw, v.py + v.ph, "black");
  svg.line(v.px, v.py, v.px, v.py + v.ph, "black");
  for (int t = 0; t <= 5; ++t) {
    const double y = ymax * t / 5;
    svg.line(v.px - 4, v.sy(y), v.px, v.sy(y), "black");
    svg.text(v.px - 8, v.sy(y) + 4, tick_label(y), 11, "end");
  }
  std::set<double> xs;
  for (const Series& s : series) xs.insert(s.x.begin(), s.x.end());
  for (double x : xs) {
    svg.line(v.sx(x), v.py + v.ph, v.sx(x), v.py + v.ph + 4, "black");
    svg.text(v.sx(x), v.py + v.ph + 18, tick_label(x), 11, "middle");
  }
  svg.text(v.px + v.pw / 2, 405, "n (log scale)", 12, "middle");
  svg.text(16, v.py - 10, ylabel, 12, "start");
  if (std::isfinite(reference)) {
    svg.line(v.px, v.sy(reference), v.px + v.pw, v.sy(reference), "#555555", 1.2, "6,4");
    svg.text(v.px + v.pw - 4, v.sy(reference) - 6, reference_label, 11, "end");
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& s = series[k];
    const std::string color = detail::palette(static_cast<int>(k));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      const double px = v.sx(s.x[i]);
      if (std::isfinite(s.lo[i]) && std::isfinite(s.hi[i])) svg.line(px, v.sy(s.lo[i]), px, v.sy(s.hi[i]), color, 1.5);
      svg.circle(px, v.sy(s.y[i]), 3.5, color);
      pts.emplace_back(px, v.sy(s.y[i]));
    }
    svg.polyline(pts, color);
    svg.rect(v.px + 12, v.py + 8 + 18 * k, 12, 12, color);
    svg.text(v.px + 30, v.py + 18 + 18 * k, s.label, 11);
  }
  return svg.str();
}

Series summary_series(const ExperimentResult& r, const std::string& label, Quartiles SummaryRow::*field) {
  Series s{label, {}, {}, {}, {}};
  for (const SummaryRow& m : r.summary) {
    s.x.push_back(m.n);
    s.y.push_back((m.*field).median);
    s.lo.push_back((m.*field).q1);
    s.hi.push_back((m.*field).q3);
  }
  return s;
}

}  // namespace

void write_experiment(const ExperimentResult& r, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  write_text((dir / "trials.csv").string(), trials_csv(r));
  std::string timings = "n,trial,seed,runtime_ms\n";
  for (const TrialRow& t : r.rows) {
    timings += std::to_string(t.n) + "," + std::to_string(t.trial) + "," + std::to_string(t.seed) + "," +
               num(t.runtime_ms) + "\n";
  }
  write_text((dir / "timings.csv").string(), timings);
  write_text((dir / "summary.csv").string(), summary_csv(r));
  Json cfg = config_to_json(r.config);
  Json ks = Json::object();
  for (const SummaryRow& m : r.summary) ks[std::to_string(m.n)] = m.k;
  cfg["k_values"] = ks;
  cfg["target"] = r.target;
  cfg["continuum"] = continuum_report_to_json(r.continuum, r.config.domain, r.config.density);
  cfg["warnings"] = r.warnings;
  write_text((dir / "config.json").string(), cfg.dump(2) + "\n");
  write_text((dir / "value_vs_n.svg").string(),
             line_plot(r.config.name + ": discrete Cheeger value", "median value (bars: IQR)",
                       {summary_series(r, r.config.k_rule.label(), &SummaryRow::value)}, r.target,
                       "continuum target " + tick_label(r.target)));
  write_text((dir / "tl1_vs_n.svg").string(),
             line_plot(r.config.name + ": TL1 distance to the continuum minimizer", "median TL1 (bars: IQR)",
                       {summary_series(r, r.config.k_rule.label(), &SummaryRow::tl1)}));
}

SweepResult scaling_sweep(const ExperimentConfig& base, const std::vector<KRule>& rules, int threads,
                          const ProgressFn& progress) {
  if (rules.empty()) throw ArgumentError("scaling sweep needs at least one k rule");
  SweepResult out;
  for (const KRule& rule : rules) {
    ExperimentConfig c = base;
    c.k_rule = rule;
    out.runs.push_back(run_experiment(c, threads, progress));
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string s = "rule,n,k,trials,failures,median_deviation,q1_deviation,q3_deviation\n";
  for (const ExperimentResult& r : sweep.runs) {
    for (const SummaryRow& m : r.summary) {
      s += csv_field(r.config.k_rule.label()) + "," + std::to_string(m.n) + "," + std::to_string(m.k) + "," +
           std::to_string(m.trials) + "," + std::to_string(m.failures) + "," + num(m.deviation.median) + "," +
           num(m.deviation.q1) + "," + num(m.deviation.q3) + "\n";
    }
  }
  return s;
}

void write_sweep(const SweepResult& sweep, const std::string& out_dir) {
  const std::filesystem::path dir(out_dir);
  write_text((dir / "sweep.csv").string(), sweep_csv(sweep));
  std::vector<Series> series;
  for (std::size_t i = 0; i < sweep.runs.size(); ++i) {
    const ExperimentResult& r = sweep.runs[i];
    series.push_back(summary_series(r, r.config.k_rule.label(), &SummaryRow::deviation));
    write_experiment(r, (dir / ("rule" + std::to_string(i) + "_" + to_string(r.config.k_rule.kind))).string());
  }
  write_text((dir / "deviation_vs_n.svg").string(),
             line_plot("relative deviation from the continuum target", "median |value - target| / target", series));
}

// ---------------------------------------------------------------------------
// Figures

namespace {

constexpr double kFigScale = 260.0;

detail::View figure_view(const Domain& d, double ox = 0.0) {
  const Box b = d.bounding_box();
  const double w = (b.hi[0] - b.lo[0]) * kFigScale, h = (b.hi[1] - b.lo[1]) * kFigScale;
  return {b.lo[0], b.hi[0], b.lo[1], b.hi[1], 20 + ox, 40, w, h, false};
}

void draw_domain(detail::Svg& svg, const detail::View& v, const Domain& d) {
  for (const Box& p : d.pieces()) {
    svg.rect(v.sx(p.lo[0]), v.sy(p.hi[1]), (p.hi[0] - p.lo[0]) * v.scale(), (p.hi[1] - p.lo[1]) * v.scale(), "#f4f4f4",
             "#999999");
  }
}

void draw_edges(detail::Svg& svg, const detail::View& v, const PointCloud& c, const Graph& g, const std::string& color) {
  for (auto [i, j] : g.edges()) {
    svg.line(v.sx(c.point(i)[0]), v.sy(c.point(i)[1]), v.sx(c.point(j)[0]), v.sy(c.point(j)[1]), color, 0.8);
  }
}

void draw_points(detail::Svg& svg, const detail::View& v, const PointCloud& c, const std::vector<std::string>& colors) {
  for (std::size_t i = 0; i < c.size(); ++i) svg.circle(v.sx(c.point(i)[0]), v.sy(c.point(i)[1]), 3.2, colors[i]);
}

std::string degree_color(int deg, int lo, int hi) {
  const double t = hi > lo ? static_cast<double>(deg - lo) / (hi - lo) : 0.5;
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(30 + 215 * t), 60, static_cast<int>(230 - 200 * t));
  return buf;
}

std::string stats_line(const std::string& name, const DegreeStats& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: degree %d..%d, mean %.2f, CV %.3f", name.c_str(), s.min, s.max, s.mean,
                s.coefficient_of_variation);
  return buf;
}

}  // namespace

FigureReport reproduce_figures(const std::string& out_dir, std::uint64_t seed) {
  const Domain domain = Domain::dumbbell({1.0, 1.0}, 0.5, 0.25);
  const Density density = Density::uniform(domain);
  const int n = 120, k = 6;
  FigureReport rep;
  rep.cloud = sample(domain, density, n, seed);
  const KnnGraph graph = build_knn(rep.cloud, k);
  if (!is_connected(graph.graph())) {
    throw StructureError("k=6 graph of the seed-" + std::to_string(seed) + " sample is disconnected; try another seed");
  }
  rep.discrete = solve(graph);
  rep.neck_cut = minimize_continuum(domain, density, CutFamily::vertical_neck).best;
  rep.eps = min_connecting_eps(rep.cloud);
  const EpsGraph eg = build_eps(rep.cloud, rep.eps);
  rep.knn_degrees = degree_stats(graph.graph());
  rep.eps_degrees = degree_stats(eg.graph);

  // Lobe purity: the left lobe's majority label, and its opposite on the right.
  const double lobe = domain.lengths()[0];
  const double right_start = lobe + domain.neck_length();
  int left_total = 0, left_in = 0, right_total = 0, right_in = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rep.cloud.point(i)[0];
    if (x < lobe) {
      ++left_total;
      left_in += rep.discrete.best.contains(i);
    } else if (x > right_start) {
      ++right_total;
      right_in += rep.discrete.best.contains(i);
    }
  }
  const bool left_label = 2 * left_in >= left_total;
  rep.left_purity = static_cast<double>(left_label ? left_in : left_total - left_in) / std::max(1, left_total);
  rep.right_purity = static_cast<double>(left_label ? right_total - right_in : right_in) / std::max(1, right_total);

  const std::filesystem::path dir(out_dir);
  const detail::View v = figure_view(domain);
  const double W = v.pw + 40, H = v.ph + 80;
  const std::vector<std::string> plain(n, "#222222");
  std::vector<std::string> side(n);
  for (int i = 0; i < n; ++i) side[i] = rep.discrete.best.contains(i) ? detail::palette(1) : detail::palette(0);
  auto emit = [&](const std::string& name, const detail::Svg& svg) {
    const std::string path = (dir / name).string();
    write_text(path, svg.str());
    rep.files.push_back(path);
  };
  char caption[200];

  {
    detail::Svg svg(W, H);
    draw_domain(svg, v, domain);
    draw_points(svg, v, rep.cloud, plain);
    std::snprintf(caption, sizeof caption, "sample of n=%d uniform points, seed %llu", n,
                  static_cast<unsigned long long>(seed));
    svg.text(W / 2, 24, caption, 14, "middle");
    emit("sample.svg", svg);
  }
  {
    detail::Svg svg(W, H);
    draw_domain(svg, v, domain);
    draw_edges(svg, v, rep.cloud, graph.graph(), "#7a7a7a");
    draw_points(svg, v, rep.cloud, plain);
    svg.text(W / 2, 24, "k-NN graph, k=6", 14, "middle");
    emit("knn_graph.svg", svg);
  }
  {
    detail::Svg svg(W, H);
    draw_domain(svg, v, domain);
    draw_edges(svg, v, rep.cloud, graph.graph(), "#cccccc");
    draw_points(svg, v, rep.cloud, side);
    std::snprintf(caption, sizeof caption, "discrete minimizer (%s), Cheeger value %.4f", to_string(rep.discrete.method).c_str(),
                  rep.discrete.best_result.cheeger_value);
    svg.text(W / 2, 24, caption, 14, "middle");
    std::snprintf(caption, sizeof caption, "lobe purity %.3f / %.3f", rep.left_purity, rep.right_purity);
    svg.text(W / 2, H - 12, caption, 12, "middle");
    emit("discrete_minimizer.svg", svg);
  }
  {
    detail::Svg svg(W, H);
    const double cut = rep.neck_cut.offset;
    for (const Box& p : domain.pieces()) {
      const double lo = p.lo[0], hi = p.hi[0];
      const double y = v.sy(p.hi[1]), h = (p.hi[1] - p.lo[1]) * v.scale();
      const bool a_low = rep.neck_cut.a_is_lower;
      if (lo < cut) svg.rect(v.sx(lo), y, (std::min(hi, cut) - lo) * v.scale(), h, detail::palette(a_low ? 1 : 0), "none", 0.35);
      if (hi > cut) svg.rect(v.sx(std::max(lo, cut)), y, (hi - std::max(lo, cut)) * v.scale(), h, detail::palette(a_low ? 0 : 1), "none", 0.35);
    }
    for (const Box& p : domain.pieces()) {
      svg.rect(v.sx(p.lo[0]), v.sy(p.hi[1]), (p.hi[0] - p.lo[0]) * v.scale(), (p.hi[1] - p.lo[1]) * v.scale(), "none",
               "#555555");
    }
    const double half = domain.neck_width() / 2, mid = domain.lengths()[1] / 2;
    svg.line(v.sx(cut), v.sy(mid + half), v.sx(cut), v.sy(mid - half), "black", 2.5);
    std::snprintf(caption, sizeof caption, "continuum neck cut x1=%.4f, value %.4f", cut, rep.neck_cut.value);
    svg.text(W / 2, 24, caption, 14, "middle");
    emit("continuum_cut.svg", svg);
  }
  {
    const detail::View left = figure_view(domain, 0.0);
    const detail::View right = figure_view(domain, v.pw + 40);
    detail::Svg svg(2 * (v.pw + 40), H + 20);
    const int lo = std::min(rep.knn_degrees.min, rep.eps_degrees.min);
    const int hi = std::max(rep.knn_degrees.max, rep.eps_degrees.max);
    std::vector<std::string> ck(n), ce(n);
    for (int i = 0; i < n; ++i) {
      ck[i] = degree_color(graph.graph().degree(i), lo, hi);
      ce[i] = degree_color(eg.graph.degree(i), lo, hi);
    }
    draw_domain(svg, left, domain);
    draw_edges(svg, left, rep.cloud, graph.graph(), "#b0b0b0");
    draw_points(svg, left, rep.cloud, ck);
    draw_domain(svg, right, domain);
    draw_edges(svg, right, rep.cloud, eg.graph, "#b0b0b0");
    draw_points(svg, right, rep.cloud, ce);
    svg.text(left.px + left.pw / 2, 24, "k-NN graph, k=6", 14, "middle");
    std::snprintf(caption, sizeof caption, "eps-graph, eps=%.4f (smallest connecting)", rep.eps);
    svg.text(right.px + right.pw / 2, 24, caption, 14, "middle");
    svg.text(left.px, H - 4, stats_line("k-NN", rep.knn_degrees), 12);
    svg.text(right.px, H - 4, stats_line("eps", rep.eps_degrees), 12);
    svg.text(left.px, H + 14, "colour: vertex degree (blue low, red high)", 11);
    emit("eps_vs_knn.svg", svg);
  }
  return rep;
}

}  // namespace knncut
