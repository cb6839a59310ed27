#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "knncut/errors.hpp"

namespace knncut::detail {

NetworkSimplex::NetworkSimplex(std::vector<std::int64_t> supply, double art_cost)
    : nodes_(static_cast<int>(supply.size())), root_(nodes_), first_arc_(nodes_) {
  if (std::accumulate(supply.begin(), supply.end(), std::int64_t{0}) != 0) {
    throw ArgumentError("network simplex needs balanced supplies");
  }
  epsilon_ = 1e-12 * std::max(1.0, art_cost);
  const int total = nodes_ + 1;
  parent_.assign(total, -1);
  pred_.assign(total, -1);
  dir_.assign(total, 0);
  depth_.assign(total, 0);
  first_child_.assign(total, -1);
  next_sib_.assign(total, -1);
  prev_sib_.assign(total, -1);
  pi_.assign(total, 0.0);
  for (int v = 0; v < nodes_; ++v) {
    if (supply[v] >= 0) {
      src_.push_back(v);
      dst_.push_back(root_);
      cost_.push_back(0.0);
      flow_.push_back(supply[v]);
      dir_[v] = kUp;
    } else {
      src_.push_back(root_);
      dst_.push_back(v);
      cost_.push_back(art_cost);
      flow_.push_back(-supply[v]);
      dir_[v] = kDown;
      pi_[v] = art_cost;
    }
    in_tree_.push_back(1);
    pred_[v] = v;
    depth_[v] = 1;
    attach(v, root_);
  }
}

int NetworkSimplex::add_arc(int source, int target, double cost) {
  src_.push_back(source);
  dst_.push_back(target);
  cost_.push_back(cost);
  flow_.push_back(0);
  in_tree_.push_back(0);
  return static_cast<int>(src_.size()) - 1 - first_arc_;
}

std::int64_t NetworkSimplex::artificial_flow() const {
  std::int64_t s = 0;
  for (int a = 0; a < first_arc_; ++a) s += flow_[a];
  return s;
}

void NetworkSimplex::attach(int v, int parent) {
  parent_[v] = parent;
  prev_sib_[v] = -1;
  next_sib_[v] = first_child_[parent];
  if (first_child_[parent] >= 0) prev_sib_[first_child_[parent]] = v;
  first_child_[parent] = v;
}

void NetworkSimplex::detach(int v) {
  const int p = parent_[v];
  if (prev_sib_[v] >= 0) {
    next_sib_[prev_sib_[v]] = next_sib_[v];
  } else {
    first_child_[p] = next_sib_[v];
  }
  if (next_sib_[v] >= 0) prev_sib_[next_sib_[v]] = prev_sib_[v];
  prev_sib_[v] = next_sib_[v] = -1;
  parent_[v] = -1;
}

// Block search: scan arcs cyclically in blocks of ~sqrt(m) and take the most
// negative reduced cost of the first block that contains one.
int NetworkSimplex::find_entering() {
  const std::size_t total = src_.size();
  const std::size_t m = total - first_arc_;
  if (m == 0) return -1;
  const std::size_t block = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(double(m))));
  if (next_arc_ < static_cast<std::size_t>(first_arc_) || next_arc_ >= total) next_arc_ = first_arc_;
  double best = -epsilon_;
  int best_arc = -1;
  std::size_t count = block;
  std::size_t e = next_arc_;
  for (std::size_t scanned = 0; scanned < m; ++scanned) {
    if (!in_tree_[e]) {
      const double rc = cost_[e] + pi_[src_[e]] - pi_[dst_[e]];
      if (rc < best) {
        best = rc;
        best_arc = static_cast<int>(e);
      }
    }
    if (++e == total) e = first_arc_;
    if (--count == 0) {
      if (best_arc >= 0) break;
      count = block;
    }
  }
  next_arc_ = e;
  return best_arc;
}

void NetworkSimplex::pivot(int in_arc) {
  const int first = src_[in_arc];
  const int second = dst_[in_arc];

  int a = first, b = second;
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  const int join = a;

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::int64_t delta = kInf;
  int u_out = -1;
  int side = 0;
  for (int x = first; x != join; x = parent_[x]) {
    const std::int64_t d = dir_[x] == kUp ? flow_[pred_[x]] : kInf;
    if (d < delta) {
      delta = d;
      u_out = x;
      side = 1;
    }
  }
  for (int x = second; x != join; x = parent_[x]) {
    const std::int64_t d = dir_[x] == kDown ? flow_[pred_[x]] : kInf;
    if (d <= delta) {
      delta = d;
      u_out = x;
      side = 2;
    }
  }
  if (side == 0) throw ConvergenceError("network simplex found an unbounded cycle");

  if (delta > 0) {
    flow_[in_arc] += delta;
    for (int x = first; x != join; x = parent_[x]) flow_[pred_[x]] -= dir_[x] * delta;
    for (int x = second; x != join; x = parent_[x]) flow_[pred_[x]] += dir_[x] * delta;
  }

  const int u_in = side == 1 ? first : second;
  const int v_in = side == 1 ? second : first;
  in_tree_[pred_[u_out]] = 0;
  in_tree_[in_arc] = 1;

  // Reverse the stem u_in -> ... -> u_out so the moved subtree hangs from u_in.
  std::vector<int>& stem = stack_;
  stem.clear();
  for (int x = u_in; x != u_out; x = parent_[x]) stem.push_back(x);
  stem.push_back(u_out);
  std::vector<int> old_pred(stem.size());
  std::vector<int> old_dir(stem.size());
  for (std::size_t i = 0; i < stem.size(); ++i) {
    old_pred[i] = pred_[stem[i]];
    old_dir[i] = dir_[stem[i]];
  }
  for (int x : stem) detach(x);
  for (std::size_t i = 1; i < stem.size(); ++i) {
    pred_[stem[i]] = old_pred[i - 1];
    dir_[stem[i]] = -old_dir[i - 1];
    attach(stem[i], stem[i - 1]);
  }
  pred_[u_in] = in_arc;
  dir_[u_in] = u_in == src_[in_arc] ? kUp : kDown;
  attach(u_in, v_in);

  const double sigma = pi_[v_in] - pi_[u_in] - dir_[u_in] * cost_[in_arc];
  stem.clear();
  stem.push_back(u_in);
  while (!stem.empty()) {
    const int x = stem.back();
    stem.pop_back();
    pi_[x] += sigma;
    depth_[x] = depth_[parent_[x]] + 1;
    for (int c = first_child_[x]; c >= 0; c = next_sib_[c]) stem.push_back(c);
  }
}

long long NetworkSimplex::solve() {
  long long pivots = 0;
  for (int e = find_entering(); e >= 0; e = find_entering()) {
    pivot(e);
    ++pivots;
  }
  return pivots;
}

}  // namespace knncut::detail
