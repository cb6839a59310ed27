#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "knncut/knn_graph.hpp"

namespace knncut {

/// u_n : X_n -> R, one value per vertex.
using GraphFunction = std::vector<double>;

/// A subset A of the vertex set, as a byte mask.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::uint8_t> mask);
  static Partition from_indices(int n, std::span<const int> members);

  [[nodiscard]] int size() const { return static_cast<int>(mask_.size()); }
  [[nodiscard]] int count() const { return count_; }
  [[nodiscard]] bool contains(int i) const { return mask_[i] != 0; }
  [[nodiscard]] const std::vector<std::uint8_t>& mask() const { return mask_; }
  [[nodiscard]] std::vector<int> members() const;
  [[nodiscard]] Partition complement() const;
  /// Both sides nonempty.
  [[nodiscard]] bool proper() const { return count_ > 0 && count_ < size(); }
  [[nodiscard]] GraphFunction indicator() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.mask_ == b.mask_; }

 private:
  std::vector<std::uint8_t> mask_;
  int count_ = 0;
};

struct CutResult {
  double gtv = 0.0;            ///< GTV_{n,k}(1_A)
  double balance = 0.0;        ///< min(|A|, |A^c|) / n
  double cheeger_value = 0.0;  ///< gtv / balance
  long long raw_edge_cut = 0;  ///< ordered pairs (i, j) with i in A, j not in A or vice versa
};

struct LimitConstants {
  double sigma_eta = 0.0;
  double alpha_d = 0.0;
  double factor = 0.0;  ///< sigma_eta / alpha_d^{1 + 1/d}
};

/// 1 / (n^2 eps_bar^{d+1}): the rescaling applied to ordered-pair sums.
double gtv_scale(const KnnGraph& graph);

/// Graph total variation, summing |u_i - u_j| over ordered pairs of neighbours.
double gtv(const KnnGraph& graph, std::span<const double> u);

/// Ordered-pair count of edges crossing the partition.
long long edge_cut(const Graph& graph, const Partition& part);

CutResult cheeger_cut(const KnnGraph& graph, const Partition& part);

/// Cut_R = (ordered-pair edge cut) / (|A| |A^c|), unscaled.
double ratio_cut(const Graph& graph, const Partition& part);

/// ∫_{B(0,1)} |z_1| dz = 2 alpha_{d-1} / (d + 1).
double sigma_eta(int d);
/// pi^{d/2} / Gamma(d/2 + 1).
double alpha_d(int d);
/// Cached per dimension.
const LimitConstants& limit_constants(int d);

/// Level-set decomposition sum_l GTV(1_{u >= t_l}) (t_l - t_{l-1}), which equals gtv(u).
double coarea_decompose(const KnnGraph& graph, std::span<const double> u);

}  // namespace knncut
