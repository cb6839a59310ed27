#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knncut/continuum.hpp"
#include "knncut/domain.hpp"
#include "knncut/functionals.hpp"

namespace knncut {

/// Atoms in R^d with positive masses summing to one.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  /// Validates masses (positive, total 1 within 1e-10).
  DiscreteMeasure(int dim, std::vector<double> coords, std::vector<double> masses);
  /// Uniform weights 1/n.
  static DiscreteMeasure uniform(int dim, std::vector<double> coords);
  static DiscreteMeasure empirical(const PointCloud& cloud);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int size() const { return static_cast<int>(masses_.size()); }
  [[nodiscard]] std::span<const double> point(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  [[nodiscard]] double mass(int i) const { return masses_[i]; }
  [[nodiscard]] const std::vector<double>& coords() const { return coords_; }
  [[nodiscard]] const std::vector<double>& masses() const { return masses_; }
  /// All masses equal to 1/size (set by `uniform`).
  [[nodiscard]] bool is_uniform() const { return uniform_; }

 private:
  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> masses_;
  bool uniform_ = false;
};

enum class QuantizeScheme { grid, montecarlo };

std::string to_string(QuantizeScheme scheme);
QuantizeScheme parse_quantize_scheme(const std::string& name);

/// m-atom approximation of nu. grid: a regular grid over the bounding box with
/// about m cells (round(L_i (m / |bbox|)^{1/d}) per axis); each cell meeting D
/// becomes one atom of mass nu(cell), placed at the cell centre, or for cells
/// cut by the boundary of D at the mean of a sub-grid of cell points inside D.
/// montecarlo: m i.i.d. samples of mass 1/m.
DiscreteMeasure quantize(const Domain& domain, const Density& density, int m, QuantizeScheme scheme,
                         std::uint64_t seed = 0);

struct PlanEntry {
  int source = 0;
  int target = 0;
  double mass = 0.0;
};

struct TransportPlan {
  std::vector<PlanEntry> pairs;
  double cost_tl1 = 0.0;  ///< sum of mass * (|x - y| + |u1(x) - u2(y)|)
  double cost_inf = 0.0;  ///< max |x - y| over pairs
  long long pivots = 0;
  int pricing_rounds = 0;
};

struct TransportOptions {
  /// Largest n1 * n2 solved with the full cost matrix.
  std::size_t max_dense_entries = 4000000;
  /// Above the dense budget, solve with candidate arcs from spatial neighbours and
  /// add arcs with negative reduced cost until none remain (still exact).
  /// When false such instances raise BudgetError.
  bool allow_sparse_pricing = false;
  int candidate_neighbors = 8;
};

double tl1_ground_cost(std::span<const double> x, double ux, std::span<const double> y, double uy);

/// Exact TL1 distance between (mu1, u1) and (mu2, u2) by network simplex.
TransportPlan tl1_distance(const DiscreteMeasure& mu1, std::span<const double> u1, const DiscreteMeasure& mu2,
                           std::span<const double> u2, const TransportOptions& options = {});

/// Bottleneck matching between equal-size uniform measures: minimizes the
/// largest displacement. Plan mass 1/n per pair; cost_tl1 is the transport part.
TransportPlan inf_transport_estimate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

/// Lower bound on TL1 for {0,1}-valued u1, u2 from the dual test function
/// f(x, b) = min(1, dist(x, atoms of mu2 labelled b)). Throws ArgumentError for
/// non-binary values.
double tl1_label_lower_bound(const DiscreteMeasure& mu1, std::span<const double> u1, const DiscreteMeasure& mu2,
                             std::span<const double> u2);

struct Tl1Comparison {
  double distance = 0.0;
  bool complemented = false;  ///< the minimum used 1 - 1_A on the discrete side
  int atoms = 0;
  int cut_index = 0;  ///< which of the candidate cuts attained the minimum
  int solves = 0;     ///< transport problems actually solved
};

/// TL1 between (nu_n, 1_A) and the grid quantization of (nu, 1_E) with E the
/// cut's side A; minimum over both labelings of the discrete partition.
Tl1Comparison tl1_discrete_vs_continuum(const PointCloud& cloud, const Partition& part, const Domain& domain,
                                        const Density& density, const ContinuumCut& cut, int m,
                                        const TransportOptions& options = {});

/// Minimum over several continuum cuts and both labelings against a fixed
/// quantization. Candidates whose lower bound already exceeds the best exact
/// value are skipped, so the result equals the full minimum.
Tl1Comparison tl1_min_over_cuts(const PointCloud& cloud, const Partition& part, const DiscreteMeasure& atoms,
                                const Domain& domain, std::span<const ContinuumCut> cuts,
                                const TransportOptions& options = {});

/// max over atoms of the marginal error of a plan.
double plan_marginal_error(const TransportPlan& plan, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2);

}  // namespace knncut
