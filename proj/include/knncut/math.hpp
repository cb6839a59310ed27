#pragma once

#include <cmath>
#include <numbers>

namespace knncut {

/// Volume of the unit ball in R^d: pi^{d/2} / Gamma(d/2 + 1).
inline double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

}  // namespace knncut
