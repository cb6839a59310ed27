#pragma once

#include <span>
#include <string>
#include <vector>

#include "knncut/domain.hpp"

namespace knncut {

enum class CutFamily { line, vertical_neck };

std::string to_string(CutFamily family);
CutFamily parse_cut_family(const std::string& name);

/// A hyperplane cut {x : x1 cos(theta) + x2 sin(theta) = offset} of D, theta in [0, pi).
/// In d = 3 the normal lies in the x1-x2 plane.
///
/// Side A is the side of smaller nu-measure. When both sides have equal
/// measure, A is the side whose centroid is lexicographically smaller.
/// Points on the hyperplane belong to A.
struct ContinuumCut {
  CutFamily family = CutFamily::line;
  double theta = 0.0;
  double offset = 0.0;
  double weighted_tv = 0.0;  ///< integral of rho^{1-1/d} over the cut surface inside D
  double nu_A = 0.0;
  double nu_Ac = 0.0;
  bool a_is_lower = true;  ///< A = {x . n <= offset}
  bool valid = false;      ///< both sides carry positive mass
  double value = 0.0;      ///< weighted_tv / min(nu_A, nu_Ac); +inf when invalid

  /// 1 if x lies in A.
  [[nodiscard]] int indicator(std::span<const double> x) const;
};

/// Integral of h = rho^{1-1/d} over the hyperplane piece inside D.
double weighted_tv_line(const Domain& domain, const Density& density, double theta, double offset);

/// Full evaluation of a line cut, including the canonical choice of side A.
ContinuumCut evaluate_line_cut(const Domain& domain, const Density& density, double theta, double offset);

/// Vertical cut x1 = offset restricted to the neck of a dumbbell.
ContinuumCut evaluate_neck_cut(const Domain& domain, const Density& density, double offset);

int continuum_indicator(const Domain& domain, const ContinuumCut& cut, std::span<const double> x);

struct ScanPoint {
  double theta = 0.0;
  double offset = 0.0;
  double value = 0.0;
};

struct ContinuumReport {
  ContinuumCut best;
  std::vector<ScanPoint> scan;
  /// Refined cuts at other angles whose value is within 1e-6 (relative) of the best;
  /// includes `best`. For the unit square these are the vertical and horizontal mid-lines.
  std::vector<ContinuumCut> co_minimizers;
  double rescaled_target = 0.0;
  int dim = 0;
  std::string note;
};

/// Offset range on which a line at angle theta meets the bounding box.
std::pair<double, double> offset_range(const Domain& domain, double theta);

/// Grid scan of resolution x resolution (theta, offset) values, then
/// golden-section refinement of the offset around the best grid cell of every angle.
ContinuumReport minimize_continuum(const Domain& domain, const Density& density, CutFamily family,
                                   int resolution = 64);

/// sigma_eta / alpha_d^{1+1/d} times the minimum value.
double rescaled_limit_value(const ContinuumReport& report, int d);

}  // namespace knncut
