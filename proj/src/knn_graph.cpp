#include "knncut/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kdtree.hpp"
#include "knncut/errors.hpp"

namespace knncut {

KnnGraph::KnnGraph(Graph adjacency, int k, int dim) : graph_(std::move(adjacency)), k_(k), dim_(dim) {
  if (dim < 1) throw ArgumentError("graph dimension must be positive");
  if (k < 1 || graph_.size() < 1) throw ArgumentError("k-NN graph needs k >= 1 and at least one vertex");
  eps_bar_ = std::pow(static_cast<double>(k) / graph_.size(), 1.0 / dim);
}

std::vector<std::vector<int>> knn_lists(const PointCloud& cloud, int k) {
  const int n = static_cast<int>(cloud.size());
  if (k < 1 || k >= n) throw ArgumentError("k-NN requires 1 <= k < n");
  detail::KdTree tree(cloud.coords, cloud.dim);
  std::vector<std::vector<int>> lists(n);
  std::vector<detail::KdTree::Hit> hits;
  for (int i = 0; i < n; ++i) {
    tree.knn(cloud.point(i), k, i, hits);
    lists[i].reserve(k);
    for (const auto& h : hits) lists[i].push_back(h.second);
  }
  return lists;
}

KnnGraph build_knn(const PointCloud& cloud, int k) {
  const auto lists = knn_lists(cloud, k);
  std::vector<Edge> edges;
  edges.reserve(lists.size() * k);
  for (int i = 0; i < static_cast<int>(lists.size()); ++i) {
    for (int j : lists[i]) edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  return KnnGraph(Graph(static_cast<int>(cloud.size()), edges), k, cloud.dim);
}

EpsGraph build_eps(const PointCloud& cloud, double eps) {
  if (!(eps > 0.0)) throw ArgumentError("eps must be positive");
  const int n = static_cast<int>(cloud.size());
  detail::KdTree tree(cloud.coords, cloud.dim);
  std::vector<Edge> edges;
  std::vector<int> hits;
  for (int i = 0; i < n; ++i) {
    tree.within(cloud.point(i), eps * eps, hits);
    for (int j : hits) {
      if (i < j) edges.emplace_back(i, j);
    }
  }
  return EpsGraph{Graph(n, edges), eps};
}

double min_connecting_eps(const PointCloud& cloud) {
  const int n = static_cast<int>(cloud.size());
  if (n < 2) throw ArgumentError("need at least two points");
  // Prim's algorithm on the complete graph; O(n^2) time, O(n) memory.
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> in_tree(n, 0);
  best[0] = 0.0;
  double longest = 0.0;
  for (int step = 0; step < n; ++step) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (!in_tree[v] && (u < 0 || best[v] < best[u])) u = v;
    }
    in_tree[u] = 1;
    longest = std::max(longest, best[u]);
    for (int v = 0; v < n; ++v) {
      if (!in_tree[v]) best[v] = std::min(best[v], squared_distance(cloud.point(u), cloud.point(v)));
    }
  }
  double eps = std::nextafter(std::sqrt(longest), std::numeric_limits<double>::infinity());
  while (!(longest < eps * eps)) eps = std::nextafter(eps, std::numeric_limits<double>::infinity());
  return eps;
}

double eps_for_mean_degree(const PointCloud& cloud, double mean_degree) {
  const int n = static_cast<int>(cloud.size());
  if (n < 2) throw ArgumentError("need at least two points");
  std::vector<double> d2;
  d2.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d2.push_back(squared_distance(cloud.point(i), cloud.point(j)));
  }
  const auto pairs = static_cast<long long>(d2.size());
  const long long target = std::clamp(std::llround(mean_degree * n / 2.0), 1LL, pairs);
  std::sort(d2.begin(), d2.end());
  // Exactly `target` pairs lie strictly below eps^2 (absent ties).
  const double below = d2[target - 1];
  const double above = target < pairs ? d2[target] : 2.0 * below + 1.0;
  return std::sqrt(0.5 * (below + above));
}

bool knn_membership_check(const PointCloud& cloud, const KnnGraph& graph, int i, int j) {
  const int n = static_cast<int>(cloud.size());
  if (graph.size() != n) throw ArgumentError("graph and cloud sizes differ");
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw ArgumentError("membership check needs two distinct vertices");
  const double r2 = squared_distance(cloud.point(i), cloud.point(j));
  // Mass of the open empirical ball around `centre` reaching `other`, in atoms.
  auto ball_atoms = [&](int centre, int other) {
    int count = 1;  // the centre itself
    for (int l = 0; l < n; ++l) {
      if (l == centre || l == other) continue;
      const double dl = squared_distance(cloud.point(centre), cloud.point(l));
      if (dl < r2 || (dl == r2 && l < other)) ++count;
    }
    return count;
  };
  const int k = graph.k();
  return ball_atoms(i, j) <= k || ball_atoms(j, i) <= k;
}

DegreeStats degree_stats(const Graph& graph) {
  DegreeStats s;
  const int n = graph.size();
  if (n == 0) return s;
  s.min = std::numeric_limits<int>::max();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    s.min = std::min(s.min, graph.degree(i));
    s.max = std::max(s.max, graph.degree(i));
    sum += graph.degree(i);
  }
  s.mean = sum / n;
  double var = 0.0;
  for (int i = 0; i < n; ++i) var += (graph.degree(i) - s.mean) * (graph.degree(i) - s.mean);
  var /= n;
  s.coefficient_of_variation = s.mean > 0.0 ? std::sqrt(var) / s.mean : 0.0;
  return s;
}

}  // namespace knncut
