#pragma once

#include <cstdint>
#include <vector>

namespace knncut::detail {

/// Primal network simplex for uncapacitated balanced min-cost flow.
///
/// The basis is a spanning tree rooted at an extra node joined to every node by
/// an artificial arc. The leaving arc is chosen so the tree stays strongly
/// feasible, which rules out cycling on degenerate pivots. Arcs can be added
/// between calls to `solve`; the current basis stays feasible because new arcs
/// enter at zero flow.
class NetworkSimplex {
 public:
  /// supply[v] > 0 for sources, < 0 for sinks; must sum to zero.
  /// `art_cost` must exceed the cost of any simple path in the full arc set.
  NetworkSimplex(std::vector<std::int64_t> supply, double art_cost);

  int add_arc(int source, int target, double cost);
  [[nodiscard]] std::size_t arc_count() const { return src_.size() - first_arc_; }

  /// Runs pivots until no arc has negative reduced cost. Returns pivot count.
  long long solve();

  /// Reduced cost c + pi(source) - pi(target) of a prospective arc.
  [[nodiscard]] double reduced_cost(int source, int target, double cost) const {
    return cost + pi_[source] - pi_[target];
  }
  [[nodiscard]] double potential(int v) const { return pi_[v]; }

  /// Flow on real arc `a` (index returned by add_arc).
  [[nodiscard]] std::int64_t flow(int a) const { return flow_[first_arc_ + a]; }
  [[nodiscard]] int arc_source(int a) const { return src_[first_arc_ + a]; }
  [[nodiscard]] int arc_target(int a) const { return dst_[first_arc_ + a]; }
  [[nodiscard]] double arc_cost(int a) const { return cost_[first_arc_ + a]; }
  /// Total flow still routed through the root.
  [[nodiscard]] std::int64_t artificial_flow() const;

 private:
  static constexpr int kUp = 1;     // tree arc points from node to parent
  static constexpr int kDown = -1;  // tree arc points from parent to node

  int find_entering();
  void pivot(int in_arc);
  void detach(int v);
  void attach(int v, int parent);

  int nodes_;
  int root_;
  int first_arc_;
  double epsilon_;
  std::vector<int> src_, dst_;
  std::vector<double> cost_;
  std::vector<std::int64_t> flow_;
  std::vector<std::uint8_t> in_tree_;

  std::vector<int> parent_, pred_, dir_, depth_;
  std::vector<int> first_child_, next_sib_, prev_sib_;
  std::vector<double> pi_;
  std::vector<int> stack_;
  std::size_t next_arc_ = 0;
};

}  // namespace knncut::detail
