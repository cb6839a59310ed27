#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <span>
#include <utility>
#include <vector>

namespace knncut::detail {

/// Static kd-tree over row-major points. Queries are exact: k-NN results are
/// ordered by (squared distance, index), so ties resolve toward smaller indices.
class KdTree {
 public:
  using Hit = std::pair<double, int>;  // (squared distance, index)

  KdTree(std::span<const double> coords, int dim, int leaf_size = 12)
      : coords_(coords), dim_(dim), leaf_size_(leaf_size) {
    const int n = dim == 0 ? 0 : static_cast<int>(coords.size() / dim);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    if (n > 0) build(0, n);
  }

  /// k nearest points to q other than `exclude`, closest first.
  void knn(std::span<const double> q, int k, int exclude, std::vector<Hit>& out) const {
    std::priority_queue<Hit> heap;
    if (!nodes_.empty() && k > 0) search_knn(0, q, k, exclude, heap);
    out.resize(heap.size());
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      *it = heap.top();
      heap.pop();
    }
  }

  /// Indices with squared distance strictly below r2.
  void within(std::span<const double> q, double r2, std::vector<int>& out) const {
    out.clear();
    if (!nodes_.empty()) search_within(0, q, r2, out);
  }

 private:
  struct Node {
    int begin = 0, end = 0;
    int left = -1, right = -1;
    std::vector<double> lo, hi;
  };

  [[nodiscard]] double coord(int idx, int axis) const { return coords_[static_cast<std::size_t>(idx) * dim_ + axis]; }

  [[nodiscard]] double point_d2(std::span<const double> q, int idx) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const double t = q[a] - coord(idx, a);
      s += t * t;
    }
    return s;
  }

  [[nodiscard]] double box_d2(std::span<const double> q, const Node& node) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      double t = 0.0;
      if (q[a] < node.lo[a]) t = q[a] - node.lo[a];
      if (q[a] > node.hi[a]) t = q[a] - node.hi[a];
      s += t * t;
    }
    return s;
  }

  int build(int begin, int end) {
    const int id = static_cast<int>(nodes_.size());
    Node fresh;
    fresh.begin = begin;
    fresh.end = end;
    nodes_.push_back(std::move(fresh));
    std::vector<double> lo(dim_, 0.0), hi(dim_, 0.0);
    for (int a = 0; a < dim_; ++a) {
      lo[a] = hi[a] = coord(order_[begin], a);
      for (int p = begin + 1; p < end; ++p) {
        lo[a] = std::min(lo[a], coord(order_[p], a));
        hi[a] = std::max(hi[a], coord(order_[p], a));
      }
    }
    if (end - begin > leaf_size_) {
      int axis = 0;
      for (int a = 1; a < dim_; ++a) {
        if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
      }
      const int mid = begin + (end - begin) / 2;
      std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                       [&](int x, int y) { return coord(x, axis) < coord(y, axis); });
      const int l = build(begin, mid);
      const int r = build(mid, end);
      nodes_[id].left = l;
      nodes_[id].right = r;
    }
    nodes_[id].lo = std::move(lo);
    nodes_[id].hi = std::move(hi);
    return id;
  }

  void search_knn(int id, std::span<const double> q, int k, int exclude, std::priority_queue<Hit>& heap) const {
    const Node& node = nodes_[id];
    if (static_cast<int>(heap.size()) == k && box_d2(q, node) > heap.top().first) return;
    if (node.left < 0) {
      for (int p = node.begin; p < node.end; ++p) {
        const int idx = order_[p];
        if (idx == exclude) continue;
        const Hit hit{point_d2(q, idx), idx};
        if (static_cast<int>(heap.size()) < k) {
          heap.push(hit);
        } else if (hit < heap.top()) {
          heap.pop();
          heap.push(hit);
        }
      }
      return;
    }
    const double dl = box_d2(q, nodes_[node.left]);
    const double dr = box_d2(q, nodes_[node.right]);
    if (dl <= dr) {
      search_knn(node.left, q, k, exclude, heap);
      search_knn(node.right, q, k, exclude, heap);
    } else {
      search_knn(node.right, q, k, exclude, heap);
      search_knn(node.left, q, k, exclude, heap);
    }
  }

  void search_within(int id, std::span<const double> q, double r2, std::vector<int>& out) const {
    const Node& node = nodes_[id];
    if (!(box_d2(q, node) < r2)) return;
    if (node.left < 0) {
      for (int p = node.begin; p < node.end; ++p) {
        if (point_d2(q, order_[p]) < r2) out.push_back(order_[p]);
      }
      return;
    }
    search_within(node.left, q, r2, out);
    search_within(node.right, q, r2, out);
  }

  std::span<const double> coords_;
  int dim_;
  int leaf_size_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace knncut::detail
