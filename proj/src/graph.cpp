#include "knncut/graph.hpp"

#include <algorithm>
#include <numeric>

#include "knncut/errors.hpp"

namespace knncut {

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw ArgumentError("graph size must be nonnegative");
  std::vector<Edge> directed;
  directed.reserve(2 * edges.size());
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw ArgumentError("edge endpoint out of range");
    if (i == j) throw ArgumentError("self-loops are not allowed");
    directed.emplace_back(i, j);
    directed.emplace_back(j, i);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  offsets_.assign(n + 1, 0);
  for (auto [i, j] : directed) ++offsets_[i + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.reserve(directed.size());
  for (auto [i, j] : directed) adj_.push_back(j);
}

bool Graph::has_edge(int i, int j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (int i = 0; i < n_; ++i) {
    for (int j : neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

UnionFind::UnionFind(int n) : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

std::vector<int> connected_components(const Graph& g) {
  UnionFind uf(g.size());
  for (int i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors(i)) {
      if (i < j) uf.unite(i, j);
    }
  }
  // Relabel roots as 0, 1, ... in order of first appearance.
  std::vector<int> label(g.size(), -1);
  std::vector<int> root_label(g.size(), -1);
  int next = 0;
  for (int i = 0; i < g.size(); ++i) {
    const int r = uf.find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    label[i] = root_label[r];
  }
  return label;
}

bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  UnionFind uf(g.size());
  for (int i = 0; i < g.size(); ++i) {
    for (int j : g.neighbors(i)) {
      if (i < j) uf.unite(i, j);
    }
  }
  return uf.components() == 1;
}

}  // namespace knncut
