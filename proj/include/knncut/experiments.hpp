#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "knncut/continuum.hpp"
#include "knncut/cut_solvers.hpp"
#include "knncut/domain.hpp"
#include "knncut/io.hpp"

namespace knncut {

enum class KRuleKind { c_log, c_log32, c_pow, constant };

/// k as a function of n:
///   c_log    ceil(c log n)
///   c_log32  ceil(c (log n)^{3/2})
///   c_pow    ceil(c n^gamma), 0 < gamma < 1
///   constant k = c (c a positive integer)
struct KRule {
  KRuleKind kind = KRuleKind::c_log32;
  double c = 1.0;
  double gamma = 0.5;

  [[nodiscard]] int k(int n) const;
  [[nodiscard]] std::string label() const;
};

std::string to_string(KRuleKind kind);
KRuleKind parse_k_rule(const std::string& name);
/// "c_log32" or {"rule": ..., "c": ..., "gamma": ...}; missing fields keep `base`.
KRule k_rule_from_json(const Json& j, KRule base);
Json k_rule_to_json(const KRule& rule);
/// Dimension-dependent default: c_log32 for d = 2, c_log otherwise.
KRule default_k_rule(int d);

struct ExperimentConfig {
  std::string name = "experiment";
  Domain domain = Domain::unit_square();
  Density density = Density::uniform(Domain::unit_square());
  std::vector<int> n_list{250, 500, 1000, 2000, 4000};
  KRule k_rule{};
  int trials = 20;
  std::uint64_t base_seed = 1;
  CutFamily family = CutFamily::line;
  int continuum_resolution = 64;
  /// Quantization size for the TL1 comparison, in atoms per sample point.
  int atoms_per_point = 4;
  bool compute_tl1 = true;
  /// Largest n solved by exhaustive enumeration.
  int exact_max_n = kExactMaxVertices;
};

/// Reads a config object. Unknown keys are rejected; "d", when given, must
/// match the domain. A "k_rules" array (used for sweeps) is accepted and ignored here.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

struct TrialRow {
  int n = 0;
  int k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  /// Solver Cheeger value; 0 for a disconnected graph (exact: a component has
  /// no cut edges), NaN for other failures.
  double discrete_value = 0.0;
  std::string method;  ///< "none" for failed trials
  double tl1_to_continuum = 0.0;  ///< NaN when TL1 is disabled or the trial failed
  double runtime_ms = 0.0;
  bool failed = false;
  std::string failure;
};

struct Quartiles {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

/// Linear interpolation between order statistics; NaN for an empty sample.
Quartiles quartiles(std::vector<double> values);

struct SummaryRow {
  int n = 0;
  int k = 0;
  int trials = 0;
  int failures = 0;
  Quartiles value;
  Quartiles tl1;
  Quartiles deviation;  ///< |value - target| / target
  double target = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  ContinuumReport continuum;
  double target = 0.0;
  std::vector<TrialRow> rows;  ///< ordered by (n, trial)
  std::vector<SummaryRow> summary;
  std::vector<std::string> warnings;
};

/// Threads used when the caller passes 0: $KNNCUT_THREADS if set, else the hardware count.
int default_thread_count();

using ProgressFn = std::function<void(const TrialRow&)>;

/// Every (n, trial): sample with seed derive_seed(base_seed, n, trial), build
/// the k-NN graph, solve, and compare with the continuum minimizers in TL1.
/// Disconnected graphs and solver errors mark the trial failed.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 0, const ProgressFn& progress = {});

/// trials.csv, timings.csv, summary.csv, config.json, value_vs_n.svg, tl1_vs_n.svg.
/// timings.csv carries runtime_ms so the other files are reproducible byte for byte.
void write_experiment(const ExperimentResult& result, const std::string& out_dir);

std::string trials_csv(const ExperimentResult& result);
std::string summary_csv(const ExperimentResult& result);

struct SweepResult {
  std::vector<ExperimentResult> runs;  ///< one per rule, in input order
};

/// run_experiment once per k rule with otherwise identical configs.
SweepResult scaling_sweep(const ExperimentConfig& base, const std::vector<KRule>& rules, int threads = 0,
                          const ProgressFn& progress = {});
/// rule,n,k,trials,failures,median_deviation,q1_deviation,q3_deviation
std::string sweep_csv(const SweepResult& sweep);
/// sweep.csv, deviation_vs_n.svg and one sub-directory per rule.
void write_sweep(const SweepResult& sweep, const std::string& out_dir);

struct FigureReport {
  std::vector<std::string> files;
  PointCloud cloud;
  SolverReport discrete;
  ContinuumCut neck_cut;
  double left_purity = 0.0;
  double right_purity = 0.0;
  double eps = 0.0;
  DegreeStats knn_degrees;
  DegreeStats eps_degrees;
};

/// Dumbbell with unit lobes and a 0.5 x 0.25 neck, n = 120 uniform points,
/// k = 6: the sample, the graph, the discrete minimizer, the continuum neck
/// cut, and a k-NN versus eps-graph pair with eps the smallest connecting radius.
FigureReport reproduce_figures(const std::string& out_dir, std::uint64_t seed = 7);

}  // namespace knncut
