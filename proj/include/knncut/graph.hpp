#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace knncut {

using Edge = std::pair<int, int>;

/// Immutable undirected simple graph in compressed sparse row form.
/// Each edge {i, j} appears in both neighbour lists; lists are sorted.
class Graph {
 public:
  Graph() = default;
  /// Edges may be given in any orientation and may repeat; self-loops are rejected.
  Graph(int n, std::span<const Edge> edges);

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] std::span<const int> neighbors(int i) const {
    return {adj_.data() + offsets_[i], static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }
  [[nodiscard]] int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }
  [[nodiscard]] std::size_t edge_count() const { return adj_.size() / 2; }
  [[nodiscard]] bool has_edge(int i, int j) const;
  /// Each edge once, as (i, j) with i < j, lexicographically ordered.
  [[nodiscard]] std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> adj_;
};

[[nodiscard]] std::vector<int> connected_components(const Graph& g);
[[nodiscard]] bool is_connected(const Graph& g);

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int x);
  bool unite(int a, int b);
  [[nodiscard]] int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_;
};

}  // namespace knncut
