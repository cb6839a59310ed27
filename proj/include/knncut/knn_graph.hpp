#pragma once

#include <span>
#include <vector>

#include "knncut/domain.hpp"
#include "knncut/graph.hpp"

namespace knncut {

/// Symmetric k-NN graph: {i, j} is an edge iff i is among the k nearest
/// neighbours of j or j among those of i. Carries eps_bar = (k/n)^{1/d}.
class KnnGraph {
 public:
  /// Wraps an explicit adjacency (tests, graphs read from disk).
  KnnGraph(Graph adjacency, int k, int dim);

  [[nodiscard]] const Graph& graph() const { return graph_; }
  [[nodiscard]] int size() const { return graph_.size(); }
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double eps_bar() const { return eps_bar_; }

 private:
  Graph graph_;
  int k_;
  int dim_;
  double eps_bar_;
};

/// All pairs at Euclidean distance strictly below eps.
struct EpsGraph {
  Graph graph;
  double eps = 0.0;
};

/// Ordered neighbour lists: the k nearest other points of every vertex,
/// closest first, ties broken by smaller index.
std::vector<std::vector<int>> knn_lists(const PointCloud& cloud, int k);

/// Throws ArgumentError unless 1 <= k < n.
KnnGraph build_knn(const PointCloud& cloud, int k);

EpsGraph build_eps(const PointCloud& cloud, double eps);

/// Smallest eps for which build_eps yields a connected graph: the next double
/// above the longest edge of a Euclidean minimum spanning tree.
double min_connecting_eps(const PointCloud& cloud);

/// eps for which the eps-graph's mean degree is as close as possible to `mean_degree`.
double eps_for_mean_degree(const PointCloud& cloud, double mean_degree);

/// Empirical-ball form of the k-NN relation: true iff
/// nu_n(B(x_i, r)) <= k/n or nu_n(B(x_j, r)) <= k/n with r = |x_i - x_j|.
/// The open ball counts its own centre; points at distance exactly r count
/// only when their index precedes the other endpoint (matching build_knn's
/// tie-break).
bool knn_membership_check(const PointCloud& cloud, const KnnGraph& graph, int i, int j);

struct DegreeStats {
  int min = 0;
  int max = 0;
  double mean = 0.0;
  double coefficient_of_variation = 0.0;
};

/// Population statistics of the degree sequence.
DegreeStats degree_stats(const Graph& graph);

/// Squared Euclidean distance, evaluated in coordinate order.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

}  // namespace knncut
