#include "knncut/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "knncut/errors.hpp"
#include "knncut/math.hpp"

namespace knncut {

Partition::Partition(std::vector<std::uint8_t> mask) : mask_(std::move(mask)) {
  for (auto& b : mask_) {
    b = b ? 1 : 0;
    count_ += b;
  }
}

Partition Partition::from_indices(int n, std::span<const int> members) {
  std::vector<std::uint8_t> mask(n, 0);
  for (int i : members) {
    if (i < 0 || i >= n) throw ArgumentError("partition member out of range");
    mask[i] = 1;
  }
  return Partition(std::move(mask));
}

std::vector<int> Partition::members() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int i = 0; i < size(); ++i) {
    if (mask_[i]) out.push_back(i);
  }
  return out;
}

Partition Partition::complement() const {
  std::vector<std::uint8_t> mask(mask_.size());
  for (std::size_t i = 0; i < mask_.size(); ++i) mask[i] = mask_[i] ? 0 : 1;
  return Partition(std::move(mask));
}

GraphFunction Partition::indicator() const { return GraphFunction(mask_.begin(), mask_.end()); }

double gtv_scale(const KnnGraph& graph) {
  const double n = graph.size();
  return 1.0 / (n * n * std::pow(graph.eps_bar(), graph.dim() + 1));
}

double gtv(const KnnGraph& graph, std::span<const double> u) {
  const Graph& g = graph.graph();
  if (static_cast<int>(u.size()) != g.size()) throw ArgumentError("function length differs from graph size");
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    double row = 0.0;
    for (int j : g.neighbors(i)) row += std::abs(u[i] - u[j]);
    sum += row;
  }
  return sum * gtv_scale(graph);
}

long long edge_cut(const Graph& graph, const Partition& part) {
  if (part.size() != graph.size()) throw ArgumentError("partition size differs from graph size");
  long long cut = 0;
  for (int i = 0; i < graph.size(); ++i) {
    for (int j : graph.neighbors(i)) {
      if (part.contains(i) != part.contains(j)) ++cut;
    }
  }
  return cut;
}

CutResult cheeger_cut(const KnnGraph& graph, const Partition& part) {
  if (!part.proper()) throw ArgumentError("Cheeger cut needs both sides nonempty");
  CutResult r;
  r.raw_edge_cut = edge_cut(graph.graph(), part);
  r.gtv = static_cast<double>(r.raw_edge_cut) * gtv_scale(graph);
  const int n = graph.size();
  r.balance = static_cast<double>(std::min(part.count(), n - part.count())) / n;
  r.cheeger_value = r.gtv / r.balance;
  return r;
}

double ratio_cut(const Graph& graph, const Partition& part) {
  if (!part.proper()) throw ArgumentError("ratio cut needs both sides nonempty");
  const double a = part.count();
  const double b = graph.size() - part.count();
  return static_cast<double>(edge_cut(graph, part)) / (a * b);
}

double alpha_d(int d) {
  if (d < 1) throw ArgumentError("dimension must be positive");
  return unit_ball_volume(d);
}

double sigma_eta(int d) {
  if (d < 1) throw ArgumentError("dimension must be positive");
  // Slice |z_1| = t: ∫_{-1}^{1} |t| alpha_{d-1} (1 - t^2)^{(d-1)/2} dt.
  return 2.0 * unit_ball_volume(d - 1) / (d + 1);
}

const LimitConstants& limit_constants(int d) {
  static std::mutex mutex;
  static std::map<int, LimitConstants> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) {
    LimitConstants c;
    c.sigma_eta = sigma_eta(d);
    c.alpha_d = alpha_d(d);
    c.factor = c.sigma_eta / std::pow(c.alpha_d, 1.0 + 1.0 / d);
    it = cache.emplace(d, c).first;
  }
  return it->second;
}

double coarea_decompose(const KnnGraph& graph, std::span<const double> u) {
  if (static_cast<int>(u.size()) != graph.size()) throw ArgumentError("function length differs from graph size");
  std::vector<double> levels(u.begin(), u.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const Graph& g = graph.graph();
  double total = 0.0;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    const double t = levels[l];
    long long cut = 0;
    for (int i = 0; i < g.size(); ++i) {
      for (int j : g.neighbors(i)) {
        if ((u[i] >= t) != (u[j] >= t)) ++cut;
      }
    }
    total += static_cast<double>(cut) * (levels[l] - levels[l - 1]);
  }
  return total * gtv_scale(graph);
}

}  // namespace knncut
