#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace knncut::detail {

inline constexpr double kQuadTolerance = 1e-13;

/// Tanh-sinh on [a, b]; tolerant of integrable endpoint singularities such
/// as the sqrt behaviour of chord lengths at the edge of a ball.
template <class F>
double integrate(F&& f, double a, double b) {
  if (!(b > a)) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, kQuadTolerance);
}

/// Integrates over [lo, hi] split at every breakpoint inside the range.
template <class F>
double integrate_pieces(F&& f, double lo, double hi, std::vector<double> breaks) {
  if (!(hi > lo)) return 0.0;
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::erase_if(breaks, [&](double t) { return !(t >= lo && t <= hi) || !std::isfinite(t); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    total += integrate(f, breaks[i], breaks[i + 1]);
  }
  return total;
}

inline double safe_sqrt(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

}  // namespace knncut::detail
