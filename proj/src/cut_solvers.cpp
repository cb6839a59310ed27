#include "knncut/cut_solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "knncut/errors.hpp"
#include "knncut/rng.hpp"

namespace knncut {

std::string to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::exact:
      return "exact";
    case SolverMethod::spectral_sweep:
      return "spectral_sweep";
    case SolverMethod::spectral_sweep_refined:
      return "spectral_sweep_refined";
  }
  return "unknown";
}

SolverMethod parse_solver_method(const std::string& name) {
  if (name == "exact") return SolverMethod::exact;
  if (name == "spectral_sweep") return SolverMethod::spectral_sweep;
  if (name == "spectral_sweep_refined") return SolverMethod::spectral_sweep_refined;
  throw ArgumentError("unknown solver method '" + name + "'");
}

namespace {

// cut_a / side_a < cut_b / side_b, exactly.
bool ratio_less(long long cut_a, long long side_a, long long cut_b, long long side_b) {
  return static_cast<__int128>(cut_a) * side_b < static_cast<__int128>(cut_b) * side_a;
}

SolverReport finish_report(const KnnGraph& graph, Partition best, SolverMethod method, int iterations,
                           double residual) {
  SolverReport r;
  r.best_result = cheeger_cut(graph, best);
  r.best = std::move(best);
  r.method = method;
  r.iterations = iterations;
  r.eigen_residual = residual;
  return r;
}

using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

SparseMatrix laplacian(const Graph& g) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(g.size() + 2 * g.edge_count());
  for (int i = 0; i < g.size(); ++i) {
    triplets.emplace_back(i, i, static_cast<double>(g.degree(i)));
    for (int j : g.neighbors(i)) triplets.emplace_back(i, j, -1.0);
  }
  SparseMatrix L(g.size(), g.size());
  L.setFromTriplets(triplets.begin(), triplets.end());
  return L;
}

void deflate_constants(Matrix& V) {
  const Eigen::RowVectorXd mean = V.colwise().mean();
  V.rowwise() -= mean;
}

Matrix orthonormalize(const Matrix& V) {
  Eigen::HouseholderQR<Matrix> qr(V);
  return qr.householderQ() * Matrix::Identity(V.rows(), V.cols());
}

// Sign convention: the entry of largest magnitude (first on ties) is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg]) * (1.0 + 1e-9)) arg = i;
  }
  if (v[arg] < 0.0) v = -v;
}

}  // namespace

LaplacianModes laplacian_modes(const Graph& graph, int count, double tol, int max_iterations) {
  const int n = graph.size();
  if (n < 2) throw ArgumentError("Laplacian modes need at least two vertices");
  if (!(tol > 0.0)) throw ArgumentError("eigen tolerance must be positive");
  if (!is_connected(graph)) throw StructureError("graph is disconnected: the zero Laplacian eigenvalue is multiple");
  count = std::clamp(count, 1, n - 1);
  const int block = std::min(n - 1, count + 3);

  const SparseMatrix L = laplacian(graph);
  double mean_degree = 0.0;
  for (int i = 0; i < n; ++i) mean_degree += graph.degree(i);
  mean_degree /= n;
  const double shift = 1e-4 * std::max(1.0, mean_degree);
  SparseMatrix shifted = L;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += shift;
  Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
  if (factor.info() != Eigen::Success) throw ConvergenceError("factorization of the shifted Laplacian failed");

  Philox4x32 rng(0x5EEDF1EDull, static_cast<std::uint64_t>(n));
  Matrix V(n, block);
  for (int j = 0; j < block; ++j) {
    for (int i = 0; i < n; ++i) V(i, j) = rng.uniform() - 0.5;
  }
  deflate_constants(V);
  V = orthonormalize(V);

  LaplacianModes out;
  Eigen::VectorXd theta;
  Matrix LV;
  for (int it = 1; it <= max_iterations; ++it) {
    Matrix W = factor.solve(V);
    deflate_constants(W);
    V = orthonormalize(W);
    LV = L * V;
    const Matrix H = V.transpose() * LV;
    Eigen::SelfAdjointEigenSolver<Matrix> ritz(0.5 * (H + H.transpose()));
    V = V * ritz.eigenvectors();
    LV = LV * ritz.eigenvectors();
    theta = ritz.eigenvalues();
    double worst = 0.0;
    for (int j = 0; j < count; ++j) worst = std::max(worst, (LV.col(j) - theta[j] * V.col(j)).norm());
    out.iterations = it;
    if (worst <= tol) break;
    if (it == max_iterations) throw ConvergenceError("Laplacian eigensolver did not reach its tolerance");
  }

  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd v = V.col(j);
    v.array() -= v.mean();
    v.normalize();
    fix_sign(v);
    const Eigen::VectorXd Lv = L * v;
    const double lambda = v.dot(Lv);
    out.eigenvalues.push_back(lambda);
    out.residuals.push_back((Lv - lambda * v).norm());
    out.vectors.emplace_back(v.data(), v.data() + n);
  }
  return out;
}

FiedlerVector fiedler_vector(const Graph& graph, double tol) {
  LaplacianModes modes = laplacian_modes(graph, 1, tol);
  FiedlerVector f;
  f.values = std::move(modes.vectors.front());
  f.eigenvalue = modes.eigenvalues.front();
  f.residual = modes.residuals.front();
  f.iterations = modes.iterations;
  return f;
}

SolverReport solve_exact(const KnnGraph& graph) {
  const int n = graph.size();
  if (n > kExactMaxVertices) throw BudgetError("exact enumeration is limited to n <= 24 vertices");
  if (n < 2) throw ArgumentError("a proper partition needs at least two vertices");
  const Graph& g = graph.graph();
  std::vector<std::uint32_t> nb(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j : g.neighbors(i)) nb[i] |= 1u << j;
  }

  // A = {0} ∪ S, S ⊆ {1..n-1}, S walked in Gray-code order; the full set is skipped.
  std::uint32_t in_a = 1u;
  int size_a = 1;
  long long cut = 2LL * g.degree(0);
  std::uint32_t best_mask = in_a;
  long long best_cut = cut;
  long long best_side = 1;
  const std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1u);
  const std::uint64_t steps = (1ull << (n - 1)) - 1;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    const int v = std::countr_zero(step) + 1;
    const std::uint32_t bit = 1u << v;
    if (in_a & bit) {
      in_a &= ~bit;
      --size_a;
      const int to_a = std::popcount(nb[v] & in_a);
      cut += 2LL * (to_a - (g.degree(v) - to_a));
    } else {
      const int to_a = std::popcount(nb[v] & in_a);
      cut += 2LL * ((g.degree(v) - to_a) - to_a);
      in_a |= bit;
      ++size_a;
    }
    if (in_a == full) continue;
    const long long side = std::min(size_a, n - size_a);
    if (ratio_less(cut, side, best_cut, best_side)) {
      best_cut = cut;
      best_side = side;
      best_mask = in_a;
    }
  }
  std::vector<std::uint8_t> mask(n);
  for (int i = 0; i < n; ++i) mask[i] = (best_mask >> i) & 1u;
  return finish_report(graph, Partition(std::move(mask)), SolverMethod::exact, static_cast<int>(steps), 0.0);
}

SolverReport sweep_cut(const KnnGraph& graph, std::span<const double> u) {
  const Graph& g = graph.graph();
  const int n = g.size();
  if (static_cast<int>(u.size()) != n) throw ArgumentError("function length differs from graph size");
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  if (!(*lo < *hi)) throw ArgumentError("sweep cut needs a non-constant function");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return u[a] < u[b] || (u[a] == u[b] && a < b); });

  std::vector<std::uint8_t> in_a(n, 0);
  long long cut = 0;
  long long best_cut = -1;
  long long best_side = 1;
  int best_prefix = 1;
  for (int j = 1; j < n; ++j) {
    const int v = order[j - 1];
    int to_a = 0;
    for (int w : g.neighbors(v)) to_a += in_a[w];
    cut += 2LL * (g.degree(v) - 2 * to_a);
    in_a[v] = 1;
    const long long side = std::min(j, n - j);
    if (best_cut < 0 || ratio_less(cut, side, best_cut, best_side)) {
      best_cut = cut;
      best_side = side;
      best_prefix = j;
    }
  }
  std::vector<std::uint8_t> mask(n, 0);
  for (int j = 0; j < best_prefix; ++j) mask[order[j]] = 1;
  return finish_report(graph, Partition(std::move(mask)), SolverMethod::spectral_sweep, n - 1, 0.0);
}

SolverReport local_refine(const KnnGraph& graph, const Partition& part, int max_passes) {
  const Graph& g = graph.graph();
  const int n = g.size();
  if (part.size() != n) throw ArgumentError("partition size differs from graph size");
  if (!part.proper()) throw ArgumentError("local refinement needs both sides nonempty");

  std::vector<std::uint8_t> mask = part.mask();
  std::vector<int> to_a(n, 0);
  long long cut = 0;
  for (int v = 0; v < n; ++v) {
    for (int w : g.neighbors(v)) {
      to_a[v] += mask[w];
      if (mask[v] != mask[w]) ++cut;
    }
  }
  int size_a = part.count();
  int moves = 0;
  while (moves < max_passes) {
    int best_v = -1;
    long long best_cut = cut;
    long long best_side = std::min(size_a, n - size_a);
    for (int v = 0; v < n; ++v) {
      const int deg = g.degree(v);
      long long new_cut;
      int new_size;
      if (mask[v]) {
        if (size_a == 1) continue;
        new_cut = cut + 2LL * (2 * to_a[v] - deg);
        new_size = size_a - 1;
      } else {
        if (size_a == n - 1) continue;
        new_cut = cut + 2LL * (deg - 2 * to_a[v]);
        new_size = size_a + 1;
      }
      const long long side = std::min(new_size, n - new_size);
      if (ratio_less(new_cut, side, best_cut, best_side)) {
        best_v = v;
        best_cut = new_cut;
        best_side = side;
      }
    }
    if (best_v < 0) break;
    const int delta = mask[best_v] ? -1 : 1;
    mask[best_v] = mask[best_v] ? 0 : 1;
    size_a += delta;
    cut = best_cut;
    for (int w : g.neighbors(best_v)) to_a[w] += delta;
    ++moves;
  }
  return finish_report(graph, Partition(std::move(mask)), SolverMethod::spectral_sweep_refined, moves, 0.0);
}

SolverReport solve_spectral(const KnnGraph& graph, const SolveOptions& options) {
  const int n = graph.size();
  const LaplacianModes modes = laplacian_modes(graph.graph(), std::min(options.modes, n - 1), options.tol);
  const int m = static_cast<int>(modes.vectors.size());

  std::vector<GraphFunction> candidates = modes.vectors;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int r = 1; r < options.rotations; ++r) {
        const double phi = std::numbers::pi * r / options.rotations;
        GraphFunction mix(n);
        for (int i = 0; i < n; ++i) {
          mix[i] = std::cos(phi) * modes.vectors[a][i] + std::sin(phi) * modes.vectors[b][i];
        }
        candidates.push_back(std::move(mix));
      }
    }
  }

  double residual = 0.0;
  for (double r : modes.residuals) residual = std::max(residual, r);

  SolverReport best;
  bool have = false;
  for (const GraphFunction& u : candidates) {
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    if (!(*lo < *hi)) continue;
    const SolverReport swept = sweep_cut(graph, u);
    SolverReport refined = local_refine(graph, swept.best, options.max_refine_moves);
    const long long side = std::min(refined.best.count(), n - refined.best.count());
    const long long best_side = have ? std::min(best.best.count(), n - best.best.count()) : 1;
    if (!have || ratio_less(refined.best_result.raw_edge_cut, side, best.best_result.raw_edge_cut, best_side)) {
      best = std::move(refined);
      have = true;
    }
  }
  if (!have) throw ConvergenceError("spectral pipeline produced only constant orderings");
  best.method = SolverMethod::spectral_sweep_refined;
  best.eigen_residual = residual;
  return best;
}

SolverReport solve(const KnnGraph& graph, const SolveOptions& options) {
  if (!is_connected(graph.graph())) throw StructureError("graph is disconnected");
  if (graph.size() <= std::min(options.exact_max_n, kExactMaxVertices)) return solve_exact(graph);
  return solve_spectral(graph, options);
}

}  // namespace knncut
