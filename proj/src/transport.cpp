#include "knncut/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "kdtree.hpp"
#include "knncut/errors.hpp"
#include "knncut/knn_graph.hpp"
#include "network_simplex.hpp"

namespace knncut {

DiscreteMeasure::DiscreteMeasure(int dim, std::vector<double> coords, std::vector<double> masses)
    : dim_(dim), coords_(std::move(coords)), masses_(std::move(masses)) {
  if (dim_ <= 0) throw ArgumentError("measure dimension must be positive");
  if (masses_.empty() || coords_.size() != masses_.size() * dim_) {
    throw ArgumentError("measure needs one coordinate row per mass");
  }
  double total = 0.0;
  for (double m : masses_) {
    if (!(m > 0.0)) throw ArgumentError("measure masses must be positive");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-10) throw ArgumentError("measure masses must sum to one");
  const double mean = 1.0 / static_cast<double>(masses_.size());
  uniform_ = std::all_of(masses_.begin(), masses_.end(), [&](double m) { return std::abs(m - mean) <= 1e-12 * mean; });
}

DiscreteMeasure DiscreteMeasure::uniform(int dim, std::vector<double> coords) {
  if (dim <= 0 || coords.empty() || coords.size() % dim != 0) throw ArgumentError("bad coordinate array");
  const std::size_t n = coords.size() / dim;
  return DiscreteMeasure(dim, std::move(coords), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

DiscreteMeasure DiscreteMeasure::empirical(const PointCloud& cloud) { return uniform(cloud.dim, cloud.coords); }

std::string to_string(QuantizeScheme scheme) { return scheme == QuantizeScheme::grid ? "grid" : "montecarlo"; }

QuantizeScheme parse_quantize_scheme(const std::string& name) {
  if (name == "grid") return QuantizeScheme::grid;
  if (name == "montecarlo") return QuantizeScheme::montecarlo;
  throw ArgumentError("unknown quantization scheme '" + name + "'");
}

namespace {

// Mean of the points of a sub^d sub-grid of the cell that lie in D; false if none do.
bool inside_mean(const Domain& domain, const Box& cell, int sub, std::vector<double>& out, bool& all_inside) {
  const int d = cell.dim();
  std::vector<int> idx(d, 0);
  std::vector<double> x(d), sum(d, 0.0);
  int inside = 0, total = 0;
  while (true) {
    for (int a = 0; a < d; ++a) x[a] = cell.lo[a] + (idx[a] + 0.5) / sub * (cell.hi[a] - cell.lo[a]);
    ++total;
    if (domain.contains(x)) {
      ++inside;
      for (int a = 0; a < d; ++a) sum[a] += x[a];
    }
    int a = 0;
    while (a < d && ++idx[a] == sub) idx[a++] = 0;
    if (a == d) break;
  }
  all_inside = inside == total;
  if (inside == 0) return false;
  out.resize(d);
  for (int a = 0; a < d; ++a) out[a] = sum[a] / inside;
  return true;
}

}  // namespace

DiscreteMeasure quantize(const Domain& domain, const Density& density, int m, QuantizeScheme scheme,
                         std::uint64_t seed) {
  if (m < 1) throw ArgumentError("quantization needs m >= 1");
  const int d = domain.dim();
  if (scheme == QuantizeScheme::montecarlo) {
    const PointCloud c = sample(domain, density, static_cast<std::size_t>(m), seed);
    return DiscreteMeasure::uniform(d, c.coords);
  }
  const Box bb = domain.bounding_box();
  const double side = std::pow(m / bb.volume(), 1.0 / d);
  std::vector<int> g(d);
  for (int a = 0; a < d; ++a) g[a] = std::max(1, static_cast<int>(std::lround((bb.hi[a] - bb.lo[a]) * side)));

  std::vector<double> coords, masses;
  std::vector<int> idx(d, 0);
  std::vector<double> centre(d), mean;
  Box cell{std::vector<double>(d), std::vector<double>(d)};
  while (true) {
    for (int a = 0; a < d; ++a) {
      const double w = (bb.hi[a] - bb.lo[a]) / g[a];
      cell.lo[a] = bb.lo[a] + idx[a] * w;
      cell.hi[a] = idx[a] + 1 == g[a] ? bb.hi[a] : bb.lo[a] + (idx[a] + 1) * w;
      centre[a] = 0.5 * (cell.lo[a] + cell.hi[a]);
    }
    const double mass = nu_box(domain, density, cell);
    if (mass > 1e-15) {
      bool all_inside = false;
      const std::vector<double>* at = &centre;
      if (inside_mean(domain, cell, 4, mean, all_inside)) {
        if (!all_inside) at = &mean;
      } else if (inside_mean(domain, cell, 16, mean, all_inside)) {
        at = &mean;
      }
      coords.insert(coords.end(), at->begin(), at->end());
      masses.push_back(mass);
    }
    int a = 0;
    while (a < d && ++idx[a] == g[a]) idx[a++] = 0;
    if (a == d) break;
  }
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  for (double& x : masses) x /= total;
  return DiscreteMeasure(d, std::move(coords), std::move(masses));
}

double tl1_ground_cost(std::span<const double> x, double ux, std::span<const double> y, double uy) {
  return std::sqrt(squared_distance(x, y)) + std::abs(ux - uy);
}

namespace {

// Integer supplies proportional to the masses. Equal-mass measures get exact
// rational weights; otherwise masses are scaled by 2^40.
struct Scaled {
  std::vector<std::int64_t> s1, s2;
  double unit = 1.0;  // integer flow per unit mass
};

std::vector<std::int64_t> scale_masses(const DiscreteMeasure& mu, std::int64_t total) {
  // Largest-remainder rounding keeps every atom within one unit of its exact share.
  const int n = mu.size();
  std::vector<std::int64_t> out(n);
  std::vector<std::pair<double, int>> rem(n);
  std::int64_t sum = 0;
  for (int i = 0; i < n; ++i) {
    const double exact = mu.mass(i) * static_cast<double>(total);
    out[i] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(exact)));
    rem[i] = {exact - static_cast<double>(out[i]), i};
    sum += out[i];
  }
  std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
  std::int64_t left = total - sum;
  for (int r = 0; left != 0; r = (r + 1) % n) {
    const int i = rem[r].second;
    if (left > 0) {
      ++out[i];
      --left;
    } else if (out[i] > 1) {
      --out[i];
      ++left;
    }
  }
  return out;
}

Scaled scale(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  Scaled s;
  const std::int64_t n1 = mu1.size(), n2 = mu2.size();
  if (mu1.is_uniform() && mu2.is_uniform()) {
    const std::int64_t g = std::gcd(n1, n2);
    s.s1.assign(n1, n2 / g);
    s.s2.assign(n2, n1 / g);
    s.unit = static_cast<double>(n1 / g * n2);
    return s;
  }
  const std::int64_t total = std::int64_t{1} << 40;
  s.s1 = scale_masses(mu1, total);
  s.s2 = scale_masses(mu2, total);
  s.unit = static_cast<double>(total);
  return s;
}

double max_ground_cost(const DiscreteMeasure& mu1, std::span<const double> u1, const DiscreteMeasure& mu2,
                       std::span<const double> u2) {
  const int d = mu1.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
  for (const DiscreteMeasure* mu : {&mu1, &mu2}) {
    for (int i = 0; i < mu->size(); ++i) {
      for (int a = 0; a < d; ++a) {
        lo[a] = std::min(lo[a], mu->point(i)[a]);
        hi[a] = std::max(hi[a], mu->point(i)[a]);
      }
    }
  }
  double diam2 = 0.0;
  for (int a = 0; a < d; ++a) diam2 += (hi[a] - lo[a]) * (hi[a] - lo[a]);
  const auto [a1, b1] = std::minmax_element(u1.begin(), u1.end());
  const auto [a2, b2] = std::minmax_element(u2.begin(), u2.end());
  return std::sqrt(diam2) + std::max(*b1, *b2) - std::min(*a1, *a2);
}

// Uniform grid over the bounding box of a measure's atoms.
class TargetCells {
 public:
  TargetCells(const DiscreteMeasure& mu, int target_cells) : dim_(mu.dim()) {
    lo_.assign(dim_, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dim_, -std::numeric_limits<double>::infinity());
    for (int i = 0; i < mu.size(); ++i) {
      for (int a = 0; a < dim_; ++a) {
        lo_[a] = std::min(lo_[a], mu.point(i)[a]);
        hi[a] = std::max(hi[a], mu.point(i)[a]);
      }
    }
    const int per_axis = std::max(1, static_cast<int>(std::lround(std::pow(double(target_cells), 1.0 / dim_))));
    side_.resize(dim_);
    width_.resize(dim_);
    int total = 1;
    for (int a = 0; a < dim_; ++a) {
      side_[a] = hi[a] > lo_[a] ? per_axis : 1;
      width_[a] = hi[a] > lo_[a] ? (hi[a] - lo_[a]) / side_[a] : 1.0;
      total *= side_[a];
    }
    members_.resize(total);
    box_lo_.assign(static_cast<std::size_t>(total) * dim_, 0.0);
    box_hi_.assign(static_cast<std::size_t>(total) * dim_, 0.0);
    for (int i = 0; i < mu.size(); ++i) {
      int c = 0;
      for (int a = 0; a < dim_; ++a) {
        const int k = std::clamp(static_cast<int>((mu.point(i)[a] - lo_[a]) / width_[a]), 0, side_[a] - 1);
        c = c * side_[a] + k;
      }
      if (members_[c].empty()) {
        for (int a = 0; a < dim_; ++a) box_lo_[c * dim_ + a] = box_hi_[c * dim_ + a] = mu.point(i)[a];
      }
      for (int a = 0; a < dim_; ++a) {
        box_lo_[c * dim_ + a] = std::min(box_lo_[c * dim_ + a], mu.point(i)[a]);
        box_hi_[c * dim_ + a] = std::max(box_hi_[c * dim_ + a], mu.point(i)[a]);
      }
      members_[c].push_back(i);
    }
  }

  [[nodiscard]] int count() const { return static_cast<int>(members_.size()); }
  [[nodiscard]] const std::vector<int>& members(int c) const { return members_[c]; }
  /// Squared distance from x to the bounding box of the cell's atoms.
  [[nodiscard]] double box_distance2(int c, std::span<const double> x) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const double lo = box_lo_[c * dim_ + a], hi = box_hi_[c * dim_ + a];
      const double g = x[a] < lo ? lo - x[a] : (x[a] > hi ? x[a] - hi : 0.0);
      s += g * g;
    }
    return s;
  }

 private:
  int dim_;
  std::vector<double> lo_, width_;
  std::vector<int> side_;
  std::vector<std::vector<int>> members_;
  std::vector<double> box_lo_, box_hi_;
};

}  // namespace

TransportPlan tl1_distance(const DiscreteMeasure& mu1, std::span<const double> u1, const DiscreteMeasure& mu2,
                           std::span<const double> u2, const TransportOptions& options) {
  if (mu1.dim() != mu2.dim()) throw ArgumentError("measures live in different dimensions");
  if (static_cast<int>(u1.size()) != mu1.size() || static_cast<int>(u2.size()) != mu2.size()) {
    throw ArgumentError("function values must match the atoms");
  }
  const int n1 = mu1.size(), n2 = mu2.size();
  const std::size_t entries = static_cast<std::size_t>(n1) * n2;
  const bool dense = entries <= options.max_dense_entries;
  if (!dense && !options.allow_sparse_pricing) {
    throw BudgetError("transport problem has " + std::to_string(entries) + " cost entries (budget " +
                      std::to_string(options.max_dense_entries) + "); quantize more coarsely");
  }

  const Scaled sc = scale(mu1, mu2);
  std::vector<std::int64_t> supply(sc.s1);
  for (std::int64_t v : sc.s2) supply.push_back(-v);
  const double art = (max_ground_cost(mu1, u1, mu2, u2) + 1.0) * (n1 + n2 + 1);
  detail::NetworkSimplex ns(std::move(supply), art);
  auto cost = [&](int i, int j) { return tl1_ground_cost(mu1.point(i), u1[i], mu2.point(j), u2[j]); };

  TransportPlan plan;
  if (dense) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) ns.add_arc(i, n1 + j, cost(i, j));
    plan.pivots = ns.solve();
  } else {
    std::vector<std::pair<int, int>> cand;
    const int k1 = std::min(options.candidate_neighbors, n2);
    const int k2 = std::min(options.candidate_neighbors, n1);
    std::vector<detail::KdTree::Hit> hits;
    const detail::KdTree t2(mu2.coords(), mu2.dim());
    for (int i = 0; i < n1; ++i) {
      t2.knn(mu1.point(i), k1, -1, hits);
      for (const auto& h : hits) cand.emplace_back(i, h.second);
    }
    const detail::KdTree t1(mu1.coords(), mu1.dim());
    for (int j = 0; j < n2; ++j) {
      t1.knn(mu2.point(j), k2, -1, hits);
      for (const auto& h : hits) cand.emplace_back(h.second, j);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (auto [i, j] : cand) ns.add_arc(i, n1 + j, cost(i, j));

    // Targets bucketed in a grid; a cell is skipped for source i when
    // dist(x_i, cell) + pi_i - max pi over the cell cannot go negative.
    const TargetCells cells(mu2, std::max(1, n2 / 16));
    std::vector<double> cell_max(cells.count());
    constexpr int kPerSource = 4;
    const double tol = 1e-12 * art;
    std::vector<std::pair<double, int>> best;
    while (true) {
      plan.pivots += ns.solve();
      ++plan.pricing_rounds;
      for (int c = 0; c < cells.count(); ++c) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int j : cells.members(c)) mx = std::max(mx, ns.potential(n1 + j));
        cell_max[c] = mx;
      }
      int added = 0;
      for (int i = 0; i < n1; ++i) {
        best.clear();
        const double pi_i = ns.potential(i);
        const auto x = mu1.point(i);
        for (int c = 0; c < cells.count(); ++c) {
          if (cells.members(c).empty()) continue;
          if (std::sqrt(cells.box_distance2(c, x)) + pi_i - cell_max[c] >= -tol) continue;
          for (int j : cells.members(c)) {
            const double rc = cost(i, j) + pi_i - ns.potential(n1 + j);
            if (rc < -tol) {
              best.emplace_back(rc, j);
              if (best.size() > 4 * kPerSource) {
                std::nth_element(best.begin(), best.begin() + kPerSource, best.end());
                best.resize(kPerSource);
              }
            }
          }
        }
        if (best.size() > kPerSource) {
          std::nth_element(best.begin(), best.begin() + kPerSource, best.end());
          best.resize(kPerSource);
        }
        for (auto [rc, j] : best) {
          ns.add_arc(i, n1 + j, cost(i, j));
          ++added;
        }
      }
      if (added == 0) break;
    }
  }
  if (ns.artificial_flow() != 0) throw ConvergenceError("transport solver left flow on artificial arcs");

  for (int a = 0; a < static_cast<int>(ns.arc_count()); ++a) {
    const std::int64_t f = ns.flow(a);
    if (f == 0) continue;
    const int i = ns.arc_source(a);
    const int j = ns.arc_target(a) - n1;
    const double mass = static_cast<double>(f) / sc.unit;
    plan.pairs.push_back({i, j, mass});
    plan.cost_tl1 += mass * ns.arc_cost(a);
    plan.cost_inf = std::max(plan.cost_inf, std::sqrt(squared_distance(mu1.point(i), mu2.point(j))));
  }
  std::sort(plan.pairs.begin(), plan.pairs.end(),
            [](const PlanEntry& a, const PlanEntry& b) { return std::tie(a.source, a.target) < std::tie(b.source, b.target); });
  return plan;
}

namespace {

// Hopcroft-Karp on the bipartite graph {(i, j) : d(i, j) <= limit}. Returns matching size.
class BottleneckMatcher {
 public:
  explicit BottleneckMatcher(const std::vector<double>& dist, int n) : dist_(dist), n_(n) {}

  int run(double limit, std::vector<int>& match_left) {
    limit_ = limit;
    match_left.assign(n_, -1);
    match_right_.assign(n_, -1);
    int size = 0;
    while (bfs(match_left)) {
      for (int i = 0; i < n_; ++i) {
        if (match_left[i] < 0 && dfs(i, match_left)) ++size;
      }
    }
    return size;
  }

 private:
  bool edge(int i, int j) const { return dist_[static_cast<std::size_t>(i) * n_ + j] <= limit_; }

  bool bfs(const std::vector<int>& match_left) {
    layer_.assign(n_, -1);
    std::queue<int> q;
    for (int i = 0; i < n_; ++i) {
      if (match_left[i] < 0) {
        layer_[i] = 0;
        q.push(i);
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int i = q.front();
      q.pop();
      for (int j = 0; j < n_; ++j) {
        if (!edge(i, j)) continue;
        const int k = match_right_[j];
        if (k < 0) {
          found = true;
        } else if (layer_[k] < 0) {
          layer_[k] = layer_[i] + 1;
          q.push(k);
        }
      }
    }
    return found;
  }

  bool dfs(int i, std::vector<int>& match_left) {
    for (int j = 0; j < n_; ++j) {
      if (!edge(i, j)) continue;
      const int k = match_right_[j];
      if (k < 0 || (layer_[k] == layer_[i] + 1 && dfs(k, match_left))) {
        match_left[i] = j;
        match_right_[j] = i;
        return true;
      }
    }
    layer_[i] = -1;
    return false;
  }

  const std::vector<double>& dist_;
  int n_;
  double limit_ = 0.0;
  std::vector<int> match_right_;
  std::vector<int> layer_;
};

}  // namespace

TransportPlan inf_transport_estimate(const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  if (mu1.size() != mu2.size()) throw ArgumentError("bottleneck matching needs equal atom counts");
  if (!mu1.is_uniform() || !mu2.is_uniform()) throw ArgumentError("bottleneck matching needs uniform masses");
  if (mu1.dim() != mu2.dim()) throw ArgumentError("measures live in different dimensions");
  const int n = mu1.size();
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dist[static_cast<std::size_t>(i) * n + j] = std::sqrt(squared_distance(mu1.point(i), mu2.point(j)));
  std::vector<double> levels(dist);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  BottleneckMatcher matcher(dist, n);
  std::vector<int> match;
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matcher.run(levels[mid], match) == n) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  matcher.run(levels[lo], match);
  TransportPlan plan;
  for (int i = 0; i < n; ++i) {
    const double d = dist[static_cast<std::size_t>(i) * n + match[i]];
    plan.pairs.push_back({i, match[i], 1.0 / n});
    plan.cost_tl1 += d / n;
    plan.cost_inf = std::max(plan.cost_inf, d);
  }
  return plan;
}

double tl1_label_lower_bound(const DiscreteMeasure& mu1, std::span<const double> u1, const DiscreteMeasure& mu2,
                             std::span<const double> u2) {
  if (mu1.dim() != mu2.dim()) throw ArgumentError("measures live in different dimensions");
  if (static_cast<int>(u1.size()) != mu1.size() || static_cast<int>(u2.size()) != mu2.size()) {
    throw ArgumentError("function values must match the atoms");
  }
  const int d = mu1.dim();
  std::vector<double> coords[2];
  for (int j = 0; j < mu2.size(); ++j) {
    if (u2[j] != 0.0 && u2[j] != 1.0) throw ArgumentError("label lower bound needs 0/1 values");
    const auto y = mu2.point(j);
    coords[static_cast<int>(u2[j])].insert(coords[static_cast<int>(u2[j])].end(), y.begin(), y.end());
  }
  const detail::KdTree t0(coords[0], d), t1(coords[1], d);
  const bool has[2] = {!coords[0].empty(), !coords[1].empty()};
  std::vector<detail::KdTree::Hit> hit;
  double lb = 0.0;
  for (int i = 0; i < mu1.size(); ++i) {
    if (u1[i] != 0.0 && u1[i] != 1.0) throw ArgumentError("label lower bound needs 0/1 values");
    const int b = static_cast<int>(u1[i]);
    double f = 1.0;
    if (has[b]) {
      (b == 0 ? t0 : t1).knn(mu1.point(i), 1, -1, hit);
      f = std::min(1.0, std::sqrt(hit.front().first));
    }
    lb += mu1.mass(i) * f;
  }
  return lb;
}

Tl1Comparison tl1_min_over_cuts(const PointCloud& cloud, const Partition& part, const DiscreteMeasure& atoms,
                                const Domain& domain, std::span<const ContinuumCut> cuts,
                                const TransportOptions& options) {
  if (part.size() != static_cast<int>(cloud.size())) throw ArgumentError("partition size differs from cloud size");
  if (cuts.empty()) throw ArgumentError("no continuum cuts to compare against");
  const DiscreteMeasure mu_n = DiscreteMeasure::empirical(cloud);
  const GraphFunction u = part.indicator();
  GraphFunction flipped(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) flipped[i] = 1.0 - u[i];

  struct Candidate {
    double bound;
    int cut;
    bool complemented;
  };
  std::vector<std::vector<double>> u_cont(cuts.size(), std::vector<double>(atoms.size()));
  std::vector<Candidate> order;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    for (int j = 0; j < atoms.size(); ++j) u_cont[c][j] = continuum_indicator(domain, cuts[c], atoms.point(j));
    order.push_back({tl1_label_lower_bound(mu_n, u, atoms, u_cont[c]), static_cast<int>(c), false});
    order.push_back({tl1_label_lower_bound(mu_n, flipped, atoms, u_cont[c]), static_cast<int>(c), true});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidate& x, const Candidate& y) { return x.bound < y.bound; });

  Tl1Comparison out;
  out.atoms = atoms.size();
  out.distance = std::numeric_limits<double>::infinity();
  for (const Candidate& cand : order) {
    if (cand.bound >= out.distance) break;
    const double v = tl1_distance(mu_n, cand.complemented ? flipped : u, atoms, u_cont[cand.cut], options).cost_tl1;
    ++out.solves;
    if (v < out.distance) {
      out.distance = v;
      out.cut_index = cand.cut;
      out.complemented = cand.complemented;
    }
  }
  return out;
}

Tl1Comparison tl1_discrete_vs_continuum(const PointCloud& cloud, const Partition& part, const Domain& domain,
                                        const Density& density, const ContinuumCut& cut, int m,
                                        const TransportOptions& options) {
  const DiscreteMeasure atoms = quantize(domain, density, m, QuantizeScheme::grid);
  return tl1_min_over_cuts(cloud, part, atoms, domain, std::span<const ContinuumCut>(&cut, 1), options);
}

double plan_marginal_error(const TransportPlan& plan, const DiscreteMeasure& mu1, const DiscreteMeasure& mu2) {
  std::vector<double> m1(mu1.size(), 0.0), m2(mu2.size(), 0.0);
  for (const PlanEntry& e : plan.pairs) {
    m1[e.source] += e.mass;
    m2[e.target] += e.mass;
  }
  double err = 0.0;
  for (int i = 0; i < mu1.size(); ++i) err = std::max(err, std::abs(m1[i] - mu1.mass(i)));
  for (int j = 0; j < mu2.size(); ++j) err = std::max(err, std::abs(m2[j] - mu2.mass(j)));
  return err;
}

}  // namespace knncut
