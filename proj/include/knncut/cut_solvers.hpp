#pragma once

#include <span>
#include <string>
#include <vector>

#include "knncut/functionals.hpp"

namespace knncut {

enum class SolverMethod { exact, spectral_sweep, spectral_sweep_refined };

std::string to_string(SolverMethod method);
SolverMethod parse_solver_method(const std::string& name);

struct SolverReport {
  Partition best;
  CutResult best_result;
  SolverMethod method = SolverMethod::exact;
  int iterations = 0;          ///< enumerated subsets, sweep thresholds, or refinement moves
  double eigen_residual = 0.0;  ///< spectral methods only
};

/// Lowest nontrivial eigenpairs of the unnormalized Laplacian (unit weights),
/// ascending. Vectors are unit-norm and orthogonal to the constants.
struct LaplacianModes {
  std::vector<GraphFunction> vectors;
  std::vector<double> eigenvalues;
  std::vector<double> residuals;  ///< ||L v - lambda v||_2
  int iterations = 0;
};

/// Block inverse iteration on L + shift I with Rayleigh-Ritz extraction and
/// explicit deflation of the constant vector. Converged when every returned
/// pair has residual <= tol. Throws StructureError on disconnected graphs.
LaplacianModes laplacian_modes(const Graph& graph, int count, double tol = 1e-8, int max_iterations = 2000);

struct FiedlerVector {
  GraphFunction values;
  double eigenvalue = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

FiedlerVector fiedler_vector(const Graph& graph, double tol = 1e-8);

inline constexpr int kExactMaxVertices = 24;

/// Global minimum over all proper subsets, enumerating the 2^{n-1} subsets
/// that contain vertex 0 in Gray-code order. Throws BudgetError for n > 24.
SolverReport solve_exact(const KnnGraph& graph);

/// Best prefix {v_1..v_j} of the vertices sorted by (u, index); ties go to the smaller prefix.
SolverReport sweep_cut(const KnnGraph& graph, std::span<const double> u);

/// Greedy best single-vertex moves until none improves or `max_passes` moves are made.
SolverReport local_refine(const KnnGraph& graph, const Partition& part, int max_passes);

struct SolveOptions {
  int exact_max_n = kExactMaxVertices;
  double tol = 1e-8;
  /// Eigenvectors fed to the sweep; pairs of them are also mixed at `rotations` angles
  /// to resolve nearly degenerate modes (e.g. the two half-period modes of a square).
  int modes = 3;
  int rotations = 8;
  int max_refine_moves = 1000000;
};

/// Laplacian modes -> sweep on every candidate ordering -> local refinement; best result.
SolverReport solve_spectral(const KnnGraph& graph, const SolveOptions& options = {});

/// Exact when n <= exact_max_n, spectral pipeline otherwise. Requires a connected graph.
SolverReport solve(const KnnGraph& graph, const SolveOptions& options = {});

}  // namespace knncut
